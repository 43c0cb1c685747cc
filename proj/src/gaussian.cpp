#include "pidkit/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace pidkit {

namespace {

constexpr double kSignDeadZone = 1e-12;

int sign_of(double x) {
    if (x > kSignDeadZone) return 1;
    if (x < -kSignDeadZone) return -1;
    return 0;
}

// splitmix64; decorrelates per-point generator streams.
std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct RunningMean {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::int64_t n = 0;

    void add(double x) {
        sum += x;
        sum_sq += x * x;
        ++n;
    }
    double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
    double standard_error() const {
        if (n < 2) return 0.0;
        double m = mean();
        double var = (sum_sq - static_cast<double>(n) * m * m) /
                     static_cast<double>(n - 1);
        return std::sqrt(std::max(var, 0.0) / static_cast<double>(n));
    }
};

// log2 of a univariate normal density.
double log2_normal(double x, double mean, double variance) {
    double z = x - mean;
    return -0.5 * std::log2(2.0 * std::numbers::pi * variance) -
           z * z / (2.0 * variance * std::numbers::ln2);
}

// log2 density of a centered bivariate normal with unit variances.
double log2_bivariate(double x, double y, double corr) {
    double det = 1.0 - corr * corr;
    double quad = (x * x - 2.0 * corr * x * y + y * y) / det;
    return -std::log2(2.0 * std::numbers::pi) - 0.5 * std::log2(det) -
           quad / (2.0 * std::numbers::ln2);
}

PIDResult make_two_predictor_pid(MeasureChoice measure, double red, double i1,
                                 double i2, double i12) {
    PIDResult out{build_lattice(2), measure, {}, true};
    out.node_reports.resize(out.lattice.node_count());
    out.lattice.node(out.lattice.index_of("{1}{2}")).redundancy = red;
    out.lattice.node(out.lattice.index_of("{1}")).redundancy = i1;
    out.lattice.node(out.lattice.index_of("{2}")).redundancy = i2;
    out.lattice.node(out.lattice.index_of("{12}")).redundancy = i12;
    for (auto& r : out.node_reports) r.converged = true;
    out.lattice.moebius_inversion();
    return out;
}

}  // namespace

Eigen::Matrix3d correlation_matrix(const GaussianSystem& sys) {
    Eigen::Matrix3d r;
    r << 1.0, sys.b, sys.a,  //
        sys.b, 1.0, sys.c,   //
        sys.a, sys.c, 1.0;
    return r;
}

bool gaussian_system_valid(const GaussianSystem& sys, double tol) {
    if (std::abs(sys.a) > 1.0 || std::abs(sys.b) > 1.0 || std::abs(sys.c) > 1.0)
        return false;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(correlation_matrix(sys));
    return es.eigenvalues().minCoeff() >= -tol;
}

double gaussian_mi(double r) {
    if (std::abs(r) >= 1.0)
        throw std::invalid_argument("gaussian_mi: |r| = 1 has infinite MI");
    return -0.5 * std::log2(1.0 - r * r);
}

double gaussian_joint_mi(const GaussianSystem& sys) {
    double det = correlation_matrix(sys).determinant();
    if (det <= 0.0)
        throw std::invalid_argument("gaussian_joint_mi: degenerate system");
    double det_predictors = 1.0 - sys.b * sys.b;
    return 0.5 * std::log2(det_predictors / det);
}

GaussianPIDResult gaussian_immi_pid(const GaussianSystem& sys) {
    if (!gaussian_system_valid(sys))
        throw std::invalid_argument("gaussian_immi_pid: invalid correlations");
    double i1 = gaussian_mi(sys.a);
    double i2 = gaussian_mi(sys.c);
    double i12 = gaussian_joint_mi(sys);
    GaussianPIDResult out{
        make_two_predictor_pid(MeasureChoice::Mmi, std::min(i1, i2), i1, i2,
                               i12),
        {},
        i12};
    return out;
}

GaussianPIDResult gaussian_iccs_pid(const GaussianSystem& sys,
                                    const MCOptions& mc) {
    if (!gaussian_system_valid(sys))
        throw std::invalid_argument("gaussian_iccs_pid: invalid correlations");
    if (mc.sample_count <= 0)
        throw std::invalid_argument("gaussian_iccs_pid: sample_count <= 0");

    Eigen::Matrix3d corr = correlation_matrix(sys);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(corr);
    if (es.eigenvalues().minCoeff() < -1e-12 ||
        es.eigenvalues().maxCoeff() <= 0.0)
        throw std::invalid_argument("gaussian_iccs_pid: degenerate covariance");
    // PSD square root; robust at the feasibility boundary where Cholesky
    // would fail.
    Eigen::Vector3d sqrt_eigs =
        es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    Eigen::Matrix3d transform =
        es.eigenvectors() * sqrt_eigs.asDiagonal();

    const double a = sys.a, b = sys.b, c = sys.c;
    if (corr.determinant() <= 1e-15 || 1.0 - b * b <= 1e-15)
        throw std::invalid_argument("gaussian_iccs_pid: degenerate covariance");
    // S | X1,X2 is normal with mean w1 x1 + w2 x2.
    const double det_x = 1.0 - b * b;
    const double w1 = (a - b * c) / det_x;
    const double w2 = (c - a * b) / det_x;
    const double var_joint = 1.0 - (a * w1 + c * w2);
    const double var1 = 1.0 - a * a;
    const double var2 = 1.0 - c * c;
    const double det3 = corr.determinant();
    const double log2_det3 = std::log2(det3);
    const double log2_2pi = std::log2(2.0 * std::numbers::pi);
    Eigen::Matrix3d precision = corr.inverse();

    std::mt19937_64 rng(mix64(mc.seed));
    std::normal_distribution<double> normal(0.0, 1.0);

    RunningMean red, unique1, unique2, synergy, d1_mean, d2_mean, d12_mean;
    for (std::int64_t i = 0; i < mc.sample_count; ++i) {
        Eigen::Vector3d z(normal(rng), normal(rng), normal(rng));
        Eigen::Vector3d v = transform * z;
        const double x1 = v[0], x2 = v[1], s = v[2];

        double h_s = -log2_normal(s, 0.0, 1.0);
        double d1 = log2_normal(s, a * x1, var1) + h_s;
        double d2 = log2_normal(s, c * x2, var2) + h_s;
        double d12 = log2_normal(s, w1 * x1 + w2 * x2, var_joint) + h_s;

        // Local co-information from the surprisal alternating sum.
        double h_x1 = -log2_normal(x1, 0.0, 1.0);
        double h_x2 = -log2_normal(x2, 0.0, 1.0);
        double h_x1x2 = -log2_bivariate(x1, x2, b);
        double h_x1s = -log2_bivariate(x1, s, a);
        double h_x2s = -log2_bivariate(x2, s, c);
        double quad = v.dot(precision * v);
        double h_all = 1.5 * log2_2pi + 0.5 * log2_det3 +
                       quad / (2.0 * std::numbers::ln2);
        double coi =
            h_x1 + h_x2 + h_s - h_x1x2 - h_x1s - h_x2s + h_all;

        int want = sign_of(coi);
        bool common = want != 0 && sign_of(d1) == want &&
                      sign_of(d2) == want && sign_of(d12) == want;
        double com = common ? coi : 0.0;

        red.add(com);
        unique1.add(d1 - com);
        unique2.add(d2 - com);
        synergy.add(d12 - d1 - d2 + com);
        d1_mean.add(d1);
        d2_mean.add(d2);
        d12_mean.add(d12);
    }

    GaussianPIDResult out{
        make_two_predictor_pid(MeasureChoice::IccsGame, red.mean(),
                               d1_mean.mean(), d2_mean.mean(),
                               d12_mean.mean()),
        {red.standard_error(), unique1.standard_error(),
         unique2.standard_error(), synergy.standard_error()},
        gaussian_joint_mi(sys)};
    if (!mc.report_standard_error) out.standard_error = {};
    return out;
}

GaussianSweep gaussian_sweep(double a, double c,
                             const std::vector<double>& b_grid,
                             const MCOptions& mc) {
    GaussianSweep sweep;
    for (std::size_t i = 0; i < b_grid.size(); ++i) {
        GaussianSystem sys{a, c, b_grid[i]};
        if (!gaussian_system_valid(sys)) {
            sweep.skipped_b.push_back(b_grid[i]);
            continue;
        }
        MCOptions point_mc = mc;
        point_mc.seed = mix64(mc.seed ^ mix64(static_cast<std::uint64_t>(i)));

        GaussianSweepPoint point;
        point.b = b_grid[i];
        auto immi = gaussian_immi_pid(sys);
        auto iccs = gaussian_iccs_pid(sys, point_mc);
        auto atoms = [](const PIDResult& p) {
            return std::array<double, 4>{p.atom("{1}{2}"), p.atom("{1}"),
                                         p.atom("{2}"), p.atom("{12}")};
        };
        point.immi_atoms = atoms(immi.pid);
        point.iccs_atoms = atoms(iccs.pid);
        point.iccs_se = iccs.standard_error;
        point.mi1 = gaussian_mi(a);
        point.mi2 = gaussian_mi(c);
        point.mi_joint = gaussian_joint_mi(sys);
        sweep.points.push_back(point);
    }
    return sweep;
}

}  // namespace pidkit

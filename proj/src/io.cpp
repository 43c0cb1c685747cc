#include "pidkit/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace pidkit {

namespace {

std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

std::vector<std::string> tokens_of(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> toks;
    std::string t;
    while (ss >> t) toks.push_back(t);
    return toks;
}

int parse_int(const std::string& tok, int line_no, const char* what) {
    try {
        std::size_t used = 0;
        int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line_no,
                         std::string("expected integer ") + what + ", got '" +
                             tok + "'");
    }
}

double parse_double(const std::string& tok, int line_no) {
    try {
        std::size_t used = 0;
        double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line_no, "expected probability, got '" + tok + "'");
    }
}

}  // namespace

JointDistribution parse_distribution(std::istream& in) {
    int n_vars = -1;
    std::vector<int> cards;
    int target = JointDistribution::kLastAxis;
    std::vector<std::pair<std::vector<int>, double>> rows;
    std::set<std::vector<int>> seen;

    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        auto toks = tokens_of(strip_comment(raw));
        if (toks.empty()) continue;

        if (toks[0] == "vars") {
            if (toks.size() != 2)
                throw ParseError(line_no, "vars takes one argument");
            n_vars = parse_int(toks[1], line_no, "variable count");
            if (n_vars < 1) throw ParseError(line_no, "vars must be >= 1");
            continue;
        }
        if (toks[0] == "cards") {
            if (n_vars < 0)
                throw ParseError(line_no, "cards before vars");
            if (static_cast<int>(toks.size()) != n_vars + 1)
                throw ParseError(line_no, "cards needs one entry per variable");
            cards.clear();
            for (int i = 1; i <= n_vars; ++i) {
                int c = parse_int(toks[i], line_no, "cardinality");
                if (c < 1)
                    throw ParseError(line_no, "cardinality must be >= 1");
                cards.push_back(c);
            }
            continue;
        }
        if (toks[0] == "target") {
            if (toks.size() != 2)
                throw ParseError(line_no, "target takes one argument");
            int j = parse_int(toks[1], line_no, "target axis");
            if (n_vars > 0 && (j < 1 || j > n_vars))
                throw ParseError(line_no, "target axis out of range");
            target = j - 1;
            continue;
        }

        if (n_vars < 0 || cards.empty())
            throw ParseError(line_no, "outcome row before vars/cards header");
        if (static_cast<int>(toks.size()) != n_vars + 1)
            throw ParseError(line_no,
                             "outcome row needs " + std::to_string(n_vars) +
                                 " values and a probability");
        std::vector<int> outcome;
        for (int i = 0; i < n_vars; ++i) {
            int v = parse_int(toks[i], line_no, "outcome value");
            if (v < 0 || v >= cards[i])
                throw ParseError(line_no, "outcome value out of range");
            outcome.push_back(v);
        }
        if (!seen.insert(outcome).second)
            throw ParseError(line_no, "duplicate outcome row");
        rows.emplace_back(std::move(outcome), parse_double(toks[n_vars], line_no));
    }

    if (n_vars < 0 || cards.empty())
        throw ParseError(line_no, "missing vars/cards header");
    try {
        return JointDistribution::from_rows(cards, rows, target);
    } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, e.what());
    }
}

JointDistribution load_distribution(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return parse_distribution(in);
}

void save_distribution(const JointDistribution& d, std::ostream& out) {
    out << "vars " << d.axis_count() << "\n";
    out << "cards";
    for (int c : d.cardinalities()) out << " " << c;
    out << "\n";
    if (d.has_target() && d.target_axis() != d.axis_count() - 1)
        out << "target " << d.target_axis() + 1 << "\n";
    for (Eigen::Index cell = 0; cell < d.cell_count(); ++cell) {
        double p = d.prob_at(cell);
        if (p == 0.0) continue;
        for (int v : d.outcome_of(cell)) out << v << " ";
        out << full_precision(p) << "\n";
    }
}

void save_distribution(const JointDistribution& d, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    save_distribution(d, out);
    if (!out) throw IoError("write failed: " + path);
}

nlohmann::json distribution_to_json(const JointDistribution& d) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index cell = 0; cell < d.cell_count(); ++cell) {
        double p = d.prob_at(cell);
        if (p == 0.0) continue;
        rows.push_back({{"outcome", d.outcome_of(cell)}, {"p", p}});
    }
    return {{"vars", d.axis_count()},
            {"cards", d.cardinalities()},
            {"target", d.has_target() ? d.target_axis() + 1 : 0},
            {"rows", rows}};
}

JointDistribution distribution_from_json(const nlohmann::json& j) {
    std::vector<int> cards = j.at("cards").get<std::vector<int>>();
    int target = j.value("target", static_cast<int>(cards.size()));
    std::vector<std::pair<std::vector<int>, double>> rows;
    for (const auto& row : j.at("rows"))
        rows.emplace_back(row.at("outcome").get<std::vector<int>>(),
                          row.at("p").get<double>());
    return JointDistribution::from_rows(
        cards, rows,
        target == 0 ? JointDistribution::kNoTarget : target - 1);
}

std::string full_precision(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

std::string fixed4(double x) {
    char buf[32];
    // Avoid the "-0.0000" rendering for vanishing negatives.
    if (std::abs(x) < 5e-5) x = 0.0;
    std::snprintf(buf, sizeof(buf), "%.4f", x);
    return buf;
}

}  // namespace

std::string render_pid(const PIDResult& result, const std::string& format) {
    const RedundancyLattice& lat = result.lattice;
    if (format == "json") {
        nlohmann::json nodes = nlohmann::json::array();
        for (int i = 0; i < lat.node_count(); ++i) {
            const LatticeNode& n = lat.node(i);
            nodes.push_back({{"node", n.antichain.name()},
                             {"level", n.level},
                             {"redundancy", n.redundancy},
                             {"partial", n.partial}});
        }
        nlohmann::json reports = nlohmann::json::array();
        for (const SolverReport& r : result.node_reports)
            reports.push_back({{"iterations", r.iterations},
                               {"residual", r.residual},
                               {"converged", r.converged}});
        return nlohmann::json{{"measure", measure_name(result.measure)},
                              {"nodes", nodes},
                              {"solver_reports", reports}}
            .dump(2);
    }
    if (format == "csv") {
        std::ostringstream out;
        out << "node,level,redundancy,partial\n";
        for (int i = 0; i < lat.node_count(); ++i) {
            const LatticeNode& n = lat.node(i);
            out << n.antichain.name() << "," << n.level << ","
                << full_precision(n.redundancy) << ","
                << full_precision(n.partial) << "\n";
        }
        return out.str();
    }
    if (format == "table") {
        std::ostringstream out;
        out << "measure: " << measure_name(result.measure) << "\n";
        out << "node             I_cap     I_partial\n";
        for (int i = 0; i < lat.node_count(); ++i) {
            const LatticeNode& n = lat.node(i);
            std::string name = n.antichain.name();
            name.resize(std::max<std::size_t>(name.size(), 16), ' ');
            out << name << " " << fixed4(n.redundancy) << "    "
                << fixed4(n.partial) << "\n";
        }
        return out.str();
    }
    throw std::invalid_argument("unknown format: " + format);
}

std::string render_term_table(const LocalTermTable& table,
                              const std::string& format) {
    auto outcome_string = [](const std::vector<int>& o) {
        std::string s = "(";
        for (std::size_t i = 0; i < o.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(o[i]);
        }
        return s + ")";
    };
    std::vector<std::string> delta_names;
    for (const Source& s : table.sources)
        delta_names.push_back("dh(a" + s.label() + ")");

    if (format == "json") {
        nlohmann::json rows = nlohmann::json::array();
        for (const LocalTermRow& r : table.rows) {
            if (r.probability <= 0.0) continue;
            rows.push_back({{"outcome", r.outcome},
                            {"p", r.probability},
                            {"source_delta", r.source_delta},
                            {"joint_delta", r.joint_delta},
                            {"coinfo", r.local_coinfo},
                            {"common", r.common_change}});
        }
        nlohmann::json sources = nlohmann::json::array();
        for (const Source& s : table.sources) sources.push_back(s.label());
        return nlohmann::json{{"sources", sources}, {"rows", rows}}.dump(2);
    }

    std::ostringstream out;
    const char sep = format == "csv" ? ',' : ' ';
    out << "outcome" << sep << "p";
    for (const auto& n : delta_names) out << sep << n;
    out << sep << "dh(joint)" << sep << "coinfo" << sep << "common\n";
    for (const LocalTermRow& r : table.rows) {
        if (r.probability <= 0.0) continue;
        out << outcome_string(r.outcome) << sep
            << (format == "csv" ? full_precision(r.probability)
                                : fixed4(r.probability));
        auto num = [&](double x) {
            return format == "csv" ? full_precision(x) : fixed4(x);
        };
        for (double d : r.source_delta) out << sep << num(d);
        out << sep << num(r.joint_delta) << sep << num(r.local_coinfo) << sep
            << num(r.common_change) << "\n";
    }
    return out.str();
}

}  // namespace pidkit

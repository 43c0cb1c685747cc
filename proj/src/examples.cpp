#include "pidkit/examples.hpp"

#include <cmath>
#include <stdexcept>

namespace pidkit {

namespace {

using Rows = std::vector<std::pair<std::vector<int>, double>>;

JointDistribution uniform_over(std::vector<int> cards, const Rows& rows) {
    Rows weighted;
    double p = 1.0 / static_cast<double>(rows.size());
    for (const auto& [outcome, _] : rows) weighted.emplace_back(outcome, p);
    return JointDistribution::from_rows(std::move(cards), weighted);
}

JointDistribution make_rdn() {
    return JointDistribution::from_rows({2, 2, 2},
                                        {{{0, 0, 0}, 0.5}, {{1, 1, 1}, 0.5}});
}

JointDistribution make_unq() {
    // S = (X1, X2) with independent uniform bits: s = 2 x1 + x2.
    Rows rows;
    for (int x1 = 0; x1 < 2; ++x1)
        for (int x2 = 0; x2 < 2; ++x2)
            rows.push_back({{x1, x2, 2 * x1 + x2}, 0});
    return uniform_over({2, 2, 4}, rows);
}

JointDistribution make_gate(int (*gate)(int, int), int s_card) {
    Rows rows;
    for (int x1 = 0; x1 < 2; ++x1)
        for (int x2 = 0; x2 < 2; ++x2) rows.push_back({{x1, x2, gate(x1, x2)}, 0});
    return uniform_over({2, 2, s_card}, rows);
}

JointDistribution make_rdnxor() {
    // X_i = (r, u_i) coded 2r + u_i; S = (r, u1 xor u2).
    Rows rows;
    for (int r = 0; r < 2; ++r)
        for (int u1 = 0; u1 < 2; ++u1)
            for (int u2 = 0; u2 < 2; ++u2)
                rows.push_back(
                    {{2 * r + u1, 2 * r + u2, 2 * r + (u1 ^ u2)}, 0});
    return uniform_over({4, 4, 4}, rows);
}

JointDistribution make_rdnunqxor() {
    // X1 = (r, u, a1), X2 = (r, v, a2), S = (r, u, v, a1 xor a2).
    Rows rows;
    for (int r = 0; r < 2; ++r)
        for (int u = 0; u < 2; ++u)
            for (int v = 0; v < 2; ++v)
                for (int a1 = 0; a1 < 2; ++a1)
                    for (int a2 = 0; a2 < 2; ++a2)
                        rows.push_back({{4 * r + 2 * u + a1, 4 * r + 2 * v + a2,
                                         8 * r + 4 * u + 2 * v + (a1 ^ a2)},
                                        0});
    return uniform_over({8, 8, 16}, rows);
}

JointDistribution make_reducedor() {
    return JointDistribution::from_rows(
        {2, 2, 2},
        {{{0, 0, 0}, 0.5}, {{0, 1, 1}, 0.25}, {{1, 0, 1}, 0.25}});
}

JointDistribution make_wb_a() {
    return uniform_over({2, 2, 3},
                        {{{0, 0, 0}, 0}, {{0, 1, 1}, 0}, {{1, 0, 2}, 0}});
}

JointDistribution make_wb_b() {
    return uniform_over(
        {2, 2, 3},
        {{{0, 0, 0}, 0}, {{0, 1, 1}, 0}, {{1, 1, 1}, 0}, {{1, 0, 2}, 0}});
}

JointDistribution make_wb_c() {
    return uniform_over({2, 2, 3}, {{{0, 0, 0}, 0},
                                    {{0, 0, 1}, 0},
                                    {{1, 0, 0}, 0},
                                    {{1, 0, 2}, 0},
                                    {{0, 1, 2}, 0},
                                    {{1, 1, 1}, 0}});
}

JointDistribution make_uniquemis() {
    return JointDistribution::from_rows(
        {2, 2, 2},
        {{{0, 0, 0}, 0.4}, {{0, 1, 0}, 0.1}, {{1, 1, 1}, 0.5}});
}

JointDistribution make_dblxor() {
    Rows rows;
    for (int x1 = 0; x1 < 2; ++x1)
        for (int x2 = 0; x2 < 2; ++x2)
            for (int x3 = 0; x3 < 2; ++x3)
                rows.push_back(
                    {{x1, x2, x3, 2 * (x1 ^ x2) + (x2 ^ x3)}, 0});
    return uniform_over({2, 2, 2, 4}, rows);
}

JointDistribution make_xorcopy() {
    Rows rows;
    for (int x1 = 0; x1 < 2; ++x1)
        for (int x2 = 0; x2 < 2; ++x2) {
            int x3 = x1 ^ x2;
            rows.push_back({{x1, x2, x3, 4 * x1 + 2 * x2 + x3}, 0});
        }
    return uniform_over({2, 2, 2, 8}, rows);
}

JointDistribution make_xorunq() {
    Rows rows;
    for (int x1 = 0; x1 < 2; ++x1)
        for (int x2 = 0; x2 < 2; ++x2)
            for (int x3 = 0; x3 < 2; ++x3)
                rows.push_back({{x1, x2, x3, 2 * (x1 ^ x2) + x3}, 0});
    return uniform_over({2, 2, 2, 4}, rows);
}

JointDistribution make_giantbit() {
    return JointDistribution::from_rows(
        {2, 2, 2, 2}, {{{0, 0, 0, 0}, 0.5}, {{1, 1, 1, 1}, 0.5}});
}

JointDistribution make_parity3() {
    Rows rows;
    for (int x1 = 0; x1 < 2; ++x1)
        for (int x2 = 0; x2 < 2; ++x2)
            for (int x3 = 0; x3 < 2; ++x3)
                rows.push_back({{x1, x2, x3, x1 ^ x2 ^ x3}, 0});
    return uniform_over({2, 2, 2, 2}, rows);
}

JointDistribution make_anddup() {
    // X3 duplicates X1; S = X1 and X2.
    Rows rows;
    for (int x1 = 0; x1 < 2; ++x1)
        for (int x2 = 0; x2 < 2; ++x2)
            rows.push_back({{x1, x2, x1, x1 & x2}, 0});
    return uniform_over({2, 2, 2, 2}, rows);
}

JointDistribution make_parityrdnrdn() {
    // X_i = (b_i, r); S = (b1 xor b2 xor b3, r).
    Rows rows;
    for (int b1 = 0; b1 < 2; ++b1)
        for (int b2 = 0; b2 < 2; ++b2)
            for (int b3 = 0; b3 < 2; ++b3)
                for (int r = 0; r < 2; ++r)
                    rows.push_back({{2 * b1 + r, 2 * b2 + r, 2 * b3 + r,
                                     2 * (b1 ^ b2 ^ b3) + r},
                                    0});
    return uniform_over({4, 4, 4, 4}, rows);
}

JointDistribution make_xorduplicate() {
    Rows rows;
    for (int x1 = 0; x1 < 2; ++x1)
        for (int x2 = 0; x2 < 2; ++x2)
            rows.push_back({{x1, x2, x1, x1 ^ x2}, 0});
    return uniform_over({2, 2, 2, 2}, rows);
}

JointDistribution make_xorloses() {
    Rows rows;
    for (int x1 = 0; x1 < 2; ++x1)
        for (int x2 = 0; x2 < 2; ++x2)
            rows.push_back({{x1, x2, x1 ^ x2, x1 ^ x2}, 0});
    return uniform_over({2, 2, 2, 2}, rows);
}

JointDistribution make_xormulticoal() {
    // Hidden bits r1 r2 r3; each predictor sees the other two.
    Rows rows;
    for (int r1 = 0; r1 < 2; ++r1)
        for (int r2 = 0; r2 < 2; ++r2)
            for (int r3 = 0; r3 < 2; ++r3)
                rows.push_back({{2 * r2 + r3, 2 * r1 + r3, 2 * r1 + r2,
                                 r1 ^ r2 ^ r3},
                                0});
    return uniform_over({4, 4, 4, 2}, rows);
}

}  // namespace

JointDistribution make_predpred(double c) {
    if (c < -0.8 || c > 0.1)
        throw std::invalid_argument(
            "predpred: valid distribution requires -0.8 <= c <= 0.1");
    // Printed tuples are (s, x1, x2); stored here as (x1, x2, s).
    auto cell = [&](int s, int x1, int x2, double p) {
        return std::pair<std::vector<int>, double>({x1, x2, s}, p);
    };
    return JointDistribution::from_rows(
        {2, 2, 2}, {
                       cell(0, 0, 0, c / 4 + 0.25),
                       cell(0, 0, 1, 1.0 / 40 - c / 4),
                       cell(0, 1, 0, 1.0 / 40 - c / 4),
                       cell(0, 1, 1, c / 4 + 0.2),
                       cell(1, 0, 0, 0.0),
                       cell(1, 0, 1, 9.0 / 40),
                       cell(1, 1, 0, 9.0 / 40),
                       cell(1, 1, 1, 1.0 / 20),
                   });
}

const std::vector<ExampleInfo>& example_registry() {
    static const std::vector<ExampleInfo> registry = {
        {"rdn", "one bit shared by both predictors and the target", 2,
         make_rdn},
        {"unq", "target copies two independent bits", 2, make_unq},
        {"xor", "target is the exclusive or of two uniform bits", 2,
         [] {
             return make_gate([](int a, int b) { return a ^ b; }, 2);
         }},
        {"and", "target is the conjunction of two uniform bits", 2,
         [] {
             return make_gate([](int a, int b) { return a & b; }, 2);
         }},
        {"or", "target is the disjunction of two uniform bits", 2,
         [] {
             return make_gate([](int a, int b) { return a | b; }, 2);
         }},
        {"sum", "target is the arithmetic sum of two uniform bits", 2,
         [] {
             return make_gate([](int a, int b) { return a + b; }, 3);
         }},
        {"rdnxor", "shared bit plus a xor bit", 2, make_rdnxor},
        {"rdnunqxor", "shared, two unique, and a xor bit", 2, make_rdnunqxor},
        {"reducedor", "or gate with the (1,1) input removed", 2,
         make_reducedor},
        {"wb-a", "three equiprobable outcomes, mixed redundancy and synergy",
         2, make_wb_a},
        {"wb-b", "independent discriminations, no synergy", 2, make_wb_b},
        {"wb-c", "first predictor alone is uninformative", 2, make_wb_c},
        {"uniquemis", "system with unique misinformation in one predictor", 2,
         make_uniquemis},
        {"dblxor", "two xor bits over three predictors", 3, make_dblxor},
        {"xorcopy", "target copies (x1, x2, x1 xor x2)", 3, make_xorcopy},
        {"xorunq", "xor bit plus an independent copied bit", 3, make_xorunq},
        {"giantbit", "one bit shared by all four variables", 3, make_giantbit},
        {"parity3", "even parity over three predictors", 3, make_parity3},
        {"anddup", "and gate with the first input duplicated", 3, make_anddup},
        {"parityrdnrdn", "parity bit plus a globally shared bit", 3,
         make_parityrdnrdn},
        {"xorduplicate", "xor gate with the first input duplicated", 3,
         make_xorduplicate},
        {"xorloses", "xor output also available as a direct input", 3,
         make_xorloses},
        {"xormulticoal", "every predictor pair spans the three parity bits", 3,
         make_xormulticoal},
        {"predpred(c)", "fixed target marginals, tunable predictor coupling",
         2, [] { return make_predpred(0.0); }},
    };
    return registry;
}

JointDistribution make_example(const std::string& name) {
    if (name.rfind("predpred", 0) == 0) {
        auto open = name.find('(');
        auto close = name.rfind(')');
        if (open == std::string::npos || close == std::string::npos ||
            close <= open + 1) {
            if (name == "predpred" || name == "predpred(c)")
                return make_predpred(0.0);
            throw std::invalid_argument(
                "predpred takes a numeric parameter, e.g. predpred(-0.4)");
        }
        double c = std::stod(name.substr(open + 1, close - open - 1));
        return make_predpred(c);
    }
    for (const ExampleInfo& info : example_registry())
        if (info.name == name) return info.make();
    throw std::invalid_argument("unknown example: " + name);
}

}  // namespace pidkit

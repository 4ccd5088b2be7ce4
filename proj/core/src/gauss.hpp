#pragma once

#include <array>

namespace fracpar::detail {

// 5-point Gauss-Legendre on [0,1] (degree 9).
struct Gauss1D {
    static constexpr int n = 5;
    static constexpr std::array<double, 5> x = {
        0.046910077030668004, 0.230765344947158450, 0.5,
        0.769234655052841550, 0.953089922969331996};
    static constexpr std::array<double, 5> w = {
        0.118463442528094544, 0.239314335249683234, 0.284444444444444444,
        0.239314335249683234, 0.118463442528094544};
};

// 7-point degree-5 rule on the reference triangle, barycentric points and
// weights normalized to sum 1.
struct GaussTri {
    static constexpr int n = 7;
    // (l1, l2) barycentric; l3 = 1 - l1 - l2
    static constexpr std::array<std::array<double, 2>, 7> p = {{
        {1.0 / 3.0, 1.0 / 3.0},
        {0.059715871789769820, 0.470142064105115090},
        {0.470142064105115090, 0.059715871789769820},
        {0.470142064105115090, 0.470142064105115090},
        {0.797426985353087320, 0.101286507323456340},
        {0.101286507323456340, 0.797426985353087320},
        {0.101286507323456340, 0.101286507323456340},
    }};
    static constexpr std::array<double, 7> w = {
        0.225,
        0.132394152788506180, 0.132394152788506180, 0.132394152788506180,
        0.125939180544827150, 0.125939180544827150, 0.125939180544827150};
};

} // namespace fracpar::detail

#pragma once

#include "engel/config.hpp"
#include "engel/fields.hpp"

namespace engel {

// Canonically oriented complete flag L < D < D2 < T at an Engel point.
// Every orientation below is deduced by the two-out-of-three rule on
// (S, T, T/S) triples, starting from the frame orientation of D, the chart
// orientation of T, and the bracket section orienting D2/D.
struct FlagAtPoint {
    FloatPoint point{};
    int chart_orientation = +1;
    // Oriented bases (positive order).
    std::array<std::array<double, 4>, 2> D_basis{};  // frame values at the point
    std::array<std::array<double, 4>, 3> D2_basis{}; // (D_basis, bracket value)
    std::array<double, 4> L_dir{};                   // oriented line direction
    // Bookkeeping for the derived orientations.
    int e4_axis = 0;       // coordinate axis completing D2 to a basis (1..4)
    int v3_sign_of_e4 = 0; // sign of that axis class in the oriented quotient T/D2
    std::array<double, 2> ad_components{}; // bracket map D -> T/D2 on the frame basis
};

FlagAtPoint canonical_flag_at(const Frame2& fr, int chart_orientation, const FloatPoint& p,
                              const Tolerances& tol = {});

using Metric4 = std::array<std::array<double, 4>, 4>;

Metric4 identity_metric();

// Orthonormal (in the metric) parallelizing frame adapted to the flag:
// E1 spans L positively, (E1,E2) positive for D, (E1,E2,E3) for D2 and
// (E1..E4) for the chart orientation.
std::array<std::array<double, 4>, 4> parallelization_frame_at(const FlagAtPoint& flag,
                                                              const Metric4& metric = identity_metric());

} // namespace engel

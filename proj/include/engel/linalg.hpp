#pragma once

#include <array>
#include <optional>
#include <vector>

#include "engel/rational.hpp"

namespace engel {

// Exact rank of a 4 x m rational matrix (columns are 4-vectors),
// fraction-free: rows are cleared to integers, then Bareiss elimination.
int exact_rank(const std::vector<std::array<Rational, 4>>& columns);

// Exact solve M x = b for a 4x4 rational matrix given by columns.
// Returns nullopt when det(M) = 0.
std::optional<std::array<Rational, 4>> solve4(const std::array<std::array<Rational, 4>, 4>& cols,
                                              const std::array<Rational, 4>& b);

Rational det4_rational(const std::array<std::array<Rational, 4>, 4>& cols);

// Numeric helpers (double precision, Eigen-backed).

// Singular values of a 4 x m matrix, descending.
std::vector<double> singular_values(const std::vector<std::array<double, 4>>& columns);

// Rank with a relative threshold on singular values.
int numeric_rank(const std::vector<std::array<double, 4>>& columns, double rel_tol);

struct Jacobian2x4 {
    std::array<std::array<double, 4>, 2> rows{};

    std::array<double, 2> apply(const std::array<double, 4>& v) const {
        std::array<double, 2> out{0.0, 0.0};
        for (int i = 0; i < 2; ++i)
            for (int k = 0; k < 4; ++k) out[i] += rows[i][k] * v[k];
        return out;
    }
};

// sigma_min / sigma_max of a 2x4 Jacobian (0 when the matrix vanishes).
double jacobian_sv_ratio(const Jacobian2x4& j);

// Gauss-Newton step direction: J^T (J J^T)^{-1} r. Returns nullopt when
// J J^T is numerically singular.
std::optional<std::array<double, 4>> pseudo_inverse_apply(const Jacobian2x4& j,
                                                          const std::array<double, 2>& r);

// Orthonormal basis of the row space of a rank-2 Jacobian.
std::optional<std::array<std::array<double, 4>, 2>> row_space_basis(const Jacobian2x4& j);

// Unit kernel vector of a stack of row vectors in R^4 (the singular vector
// for the smallest singular value).
std::array<double, 4> min_singular_direction(const std::vector<std::array<double, 4>>& rows);

} // namespace engel

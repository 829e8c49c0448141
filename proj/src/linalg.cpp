#include "engel/linalg.hpp"

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

namespace engel {

namespace {

using boost::multiprecision::cpp_int;

// Clear a rational row to integers (multiply by the lcm of denominators).
std::array<cpp_int, 4> clear_row(const std::array<Rational, 4>& row) {
    cpp_int l = 1;
    for (const auto& r : row) {
        cpp_int d = denominator(r);
        l = lcm(l, d);
    }
    std::array<cpp_int, 4> out;
    for (int k = 0; k < 4; ++k) out[k] = numerator(row[k]) * (l / denominator(row[k]));
    return out;
}

Eigen::MatrixXd to_matrix(const std::vector<std::array<double, 4>>& columns) {
    Eigen::MatrixXd m(4, static_cast<Eigen::Index>(columns.size()));
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (int i = 0; i < 4; ++i) m(i, j) = columns[static_cast<size_t>(j)][i];
    return m;
}

} // namespace

int exact_rank(const std::vector<std::array<Rational, 4>>& columns) {
    if (columns.empty()) return 0;
    // Work on the m x 4 transpose; rank is the same and rows stay short.
    std::vector<std::array<cpp_int, 4>> rows;
    rows.reserve(columns.size());
    for (const auto& c : columns) {
        auto r = clear_row(c);
        if (r[0] != 0 || r[1] != 0 || r[2] != 0 || r[3] != 0) rows.push_back(std::move(r));
    }
    // Bareiss fraction-free elimination.
    int rank = 0;
    cpp_int prev_pivot = 1;
    for (int col = 0; col < 4 && rank < static_cast<int>(rows.size()); ++col) {
        int pivot_row = -1;
        for (int i = rank; i < static_cast<int>(rows.size()); ++i) {
            if (rows[i][col] != 0) {
                pivot_row = i;
                break;
            }
        }
        if (pivot_row < 0) continue;
        std::swap(rows[rank], rows[pivot_row]);
        const cpp_int pivot = rows[rank][col];
        for (int i = rank + 1; i < static_cast<int>(rows.size()); ++i) {
            for (int k = col + 1; k < 4; ++k)
                rows[i][k] = (pivot * rows[i][k] - rows[i][col] * rows[rank][k]) / prev_pivot;
            rows[i][col] = 0;
        }
        prev_pivot = pivot;
        ++rank;
        if (rank == 4) break;
    }
    return rank;
}

Rational det4_rational(const std::array<std::array<Rational, 4>, 4>& cols) {
    auto minor3 = [&](int skip_row) {
        std::array<int, 3> r;
        int n = 0;
        for (int i = 0; i < 4; ++i)
            if (i != skip_row) r[n++] = i;
        const auto& c1 = cols[1];
        const auto& c2 = cols[2];
        const auto& c3 = cols[3];
        return c1[r[0]] * (c2[r[1]] * c3[r[2]] - c2[r[2]] * c3[r[1]]) -
               c1[r[1]] * (c2[r[0]] * c3[r[2]] - c2[r[2]] * c3[r[0]]) +
               c1[r[2]] * (c2[r[0]] * c3[r[1]] - c2[r[1]] * c3[r[0]]);
    };
    Rational out = 0;
    Rational sign = 1;
    for (int i = 0; i < 4; ++i) {
        if (cols[0][i] != 0) out += cols[0][i] * minor3(i) * sign;
        sign = -sign;
    }
    return out;
}

std::optional<std::array<Rational, 4>> solve4(const std::array<std::array<Rational, 4>, 4>& cols,
                                              const std::array<Rational, 4>& b) {
    Rational den = det4_rational(cols);
    if (den == 0) return std::nullopt;
    std::array<Rational, 4> x;
    for (int j = 0; j < 4; ++j) {
        auto cramer = cols;
        cramer[j] = b;
        x[j] = det4_rational(cramer) / den;
    }
    return x;
}

std::vector<double> singular_values(const std::vector<std::array<double, 4>>& columns) {
    if (columns.empty()) return {};
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_matrix(columns));
    std::vector<double> out(svd.singularValues().data(),
                            svd.singularValues().data() + svd.singularValues().size());
    return out;
}

int numeric_rank(const std::vector<std::array<double, 4>>& columns, double rel_tol) {
    auto sv = singular_values(columns);
    if (sv.empty() || sv[0] == 0.0) return 0;
    int rank = 0;
    for (double s : sv)
        if (s > rel_tol * sv[0]) ++rank;
    return rank;
}

double jacobian_sv_ratio(const Jacobian2x4& j) {
    Eigen::Matrix<double, 2, 4> m;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 4; ++k) m(i, k) = j.rows[i][k];
    Eigen::JacobiSVD<Eigen::Matrix<double, 2, 4>> svd(m);
    double smax = svd.singularValues()(0);
    if (smax == 0.0) return 0.0;
    return svd.singularValues()(1) / smax;
}

std::optional<std::array<double, 4>> pseudo_inverse_apply(const Jacobian2x4& j,
                                                          const std::array<double, 2>& r) {
    Eigen::Matrix<double, 2, 4> m;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 4; ++k) m(i, k) = j.rows[i][k];
    Eigen::Matrix2d gram = m * m.transpose();
    double scale = gram.cwiseAbs().maxCoeff();
    if (scale == 0.0 || std::abs(gram.determinant()) < 1e-28 * scale * scale) return std::nullopt;
    Eigen::Vector2d rhs(r[0], r[1]);
    Eigen::Vector4d step = m.transpose() * gram.inverse() * rhs;
    return std::array<double, 4>{step(0), step(1), step(2), step(3)};
}

std::optional<std::array<std::array<double, 4>, 2>> row_space_basis(const Jacobian2x4& j) {
    Eigen::Matrix<double, 2, 4> m;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 4; ++k) m(i, k) = j.rows[i][k];
    Eigen::JacobiSVD<Eigen::Matrix<double, 2, 4>> svd(m, Eigen::ComputeFullV);
    double smax = svd.singularValues()(0);
    if (smax == 0.0 || svd.singularValues()(1) < 1e-14 * smax) return std::nullopt;
    std::array<std::array<double, 4>, 2> out;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 4; ++k) out[i][k] = svd.matrixV()(k, i);
    return out;
}

std::array<double, 4> min_singular_direction(const std::vector<std::array<double, 4>>& rows) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), 4);
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (int k = 0; k < 4; ++k) m(i, k) = rows[static_cast<size_t>(i)][k];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    Eigen::Vector4d v = svd.matrixV().col(3);
    return {v(0), v(1), v(2), v(3)};
}

} // namespace engel

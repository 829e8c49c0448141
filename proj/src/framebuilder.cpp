#include "engel/framebuilder.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "engel/errors.hpp"
#include "engel/flags.hpp"

namespace engel {

namespace {

double det4_double(const std::array<std::array<double, 4>, 4>& cols) {
    Eigen::Matrix4d m;
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i) m(i, j) = cols[static_cast<size_t>(j)][static_cast<size_t>(i)];
    return m.determinant();
}

int sgn(double x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

} // namespace

Metric4 identity_metric() {
    Metric4 m{};
    for (int i = 0; i < 4; ++i) m[i][i] = 1.0;
    return m;
}

FlagAtPoint canonical_flag_at(const Frame2& fr, int chart_orientation, const FloatPoint& p,
                              const Tolerances& tol) {
    if (chart_orientation != 1 && chart_orientation != -1)
        throw Error(ErrorCode::InvalidArgument, "chart orientation must be +1 or -1");
    if (!is_engel_at(fr, p, tol))
        throw Error(ErrorCode::NotEngelPoint, "growth vector is not (2,3,4) at the point");

    auto [first, second] = fr.oriented_pair();
    VectorField bracket = lie_bracket(*first, *second);

    FlagAtPoint flag;
    flag.point = p;
    flag.chart_orientation = chart_orientation;
    flag.D_basis[0] = first->evaluate(p);
    flag.D_basis[1] = second->evaluate(p);
    // The bracket section orients D2/D, so (frame, bracket) is the positive
    // basis of D2.
    std::array<double, 4> delta = bracket.evaluate(p);
    flag.D2_basis = {flag.D_basis[0], flag.D_basis[1], delta};

    // Complement axis with the largest determinant against D2.
    int best_axis = -1;
    double best = 0.0;
    double best_det = 0.0;
    for (int a = 0; a < 4; ++a) {
        std::array<std::array<double, 4>, 4> cols{};
        cols[0] = flag.D_basis[0];
        cols[1] = flag.D_basis[1];
        cols[2] = delta;
        cols[3] = {};
        cols[3][a] = 1.0;
        double d = det4_double(cols);
        if (std::abs(d) > best) {
            best = std::abs(d);
            best_axis = a;
            best_det = d;
        }
    }
    if (best_axis < 0) throw Error(ErrorCode::NotEngelPoint, "flag basis degenerate at the point");
    flag.e4_axis = best_axis + 1;
    // T/D2 orientation: the chart orientation of T equals the D2 orientation
    // followed by the quotient orientation, so the sign of an axis class is
    // the sign of its completing determinant times the chart orientation.
    flag.v3_sign_of_e4 = sgn(best_det) * chart_orientation;

    // Bracket map D -> T/D2 on the frame basis, in oriented quotient units.
    Eigen::Matrix4d m;
    for (int i = 0; i < 4; ++i) {
        m(i, 0) = flag.D_basis[0][i];
        m(i, 1) = flag.D_basis[1][i];
        m(i, 2) = delta[i];
        m(i, 3) = i == best_axis ? 1.0 : 0.0;
    }
    Eigen::PartialPivLU<Eigen::Matrix4d> lu(m);
    for (int which = 0; which < 2; ++which) {
        const VectorField& y = which == 0 ? *first : *second;
        auto val = lie_bracket(y, bracket).evaluate(p);
        Eigen::Vector4d rhs(val[0], val[1], val[2], val[3]);
        Eigen::Vector4d sol = lu.solve(rhs);
        flag.ad_components[which] = sol(3) * flag.v3_sign_of_e4;
    }

    // Kernel of the bracket map is the distinguished line; the quotient map
    // orients D/L, and the two-out-of-three rule on (L, D, D/L) fixes the
    // line orientation. Working it out in frame coordinates gives the closed
    // form (a2, -a1), which is automatically positively oriented.
    double a1 = flag.ad_components[0];
    double a2 = flag.ad_components[1];
    if (std::hypot(a1, a2) == 0.0)
        throw Error(ErrorCode::NotEngelPoint, "bracket map vanishes; not an Engel point");
    for (int k = 0; k < 4; ++k) flag.L_dir[k] = a2 * flag.D_basis[0][k] - a1 * flag.D_basis[1][k];
    return flag;
}

std::array<std::array<double, 4>, 4> parallelization_frame_at(const FlagAtPoint& flag,
                                                              const Metric4& metric) {
    Eigen::Matrix4d g;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) g(i, j) = metric[static_cast<size_t>(i)][static_cast<size_t>(j)];
    if (!g.isApprox(g.transpose(), 1e-12))
        throw Error(ErrorCode::DegenerateMetric, "metric must be symmetric");
    Eigen::LLT<Eigen::Matrix4d> llt(g);
    if (llt.info() != Eigen::Success)
        throw Error(ErrorCode::DegenerateMetric, "metric must be positive definite");

    auto inner = [&](const std::array<double, 4>& a, const std::array<double, 4>& b) {
        double s = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) s += a[i] * g(i, j) * b[j];
        return s;
    };
    auto normalize = [&](std::array<double, 4> v) {
        double n = std::sqrt(inner(v, v));
        if (n == 0.0) throw Error(ErrorCode::DegenerateMetric, "zero vector in frame build");
        for (auto& x : v) x /= n;
        return v;
    };
    auto orthogonalize = [&](std::array<double, 4> v,
                             const std::vector<std::array<double, 4>>& prev) {
        for (const auto& e : prev) {
            double c = inner(v, e);
            for (int k = 0; k < 4; ++k) v[k] -= c * e[k];
        }
        return v;
    };

    std::vector<std::array<double, 4>> frame;
    frame.push_back(normalize(flag.L_dir));

    // Orientation of a candidate pair/triple against the stored oriented
    // bases, via the coordinate matrix determinant (least squares).
    auto orientation_vs = [&](const std::vector<std::array<double, 4>>& cand,
                              const std::array<double, 4>* basis, int n) {
        Eigen::MatrixXd B(4, n), C(4, n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < 4; ++i) {
                B(i, j) = basis[j][i];
                C(i, j) = cand[static_cast<size_t>(j)][i];
            }
        Eigen::MatrixXd Bt = B.transpose();
        Eigen::MatrixXd gram = Bt * B;
        Eigen::MatrixXd rhs = Bt * C;
        Eigen::MatrixXd coords = gram.ldlt().solve(rhs);
        double det = coords.determinant();
        return sgn(det);
    };

    // E2 in the plane field: pick the frame vector with the larger
    // orthogonal residual.
    {
        std::array<double, 4> best{};
        double best_norm = -1.0;
        for (const auto& cand : flag.D_basis) {
            auto w = orthogonalize(cand, frame);
            double n = inner(w, w);
            if (n > best_norm) {
                best_norm = n;
                best = w;
            }
        }
        auto e2 = normalize(best);
        std::vector<std::array<double, 4>> pair = {frame[0], e2};
        if (orientation_vs(pair, flag.D_basis.data(), 2) < 0)
            for (auto& x : e2) x = -x;
        frame.push_back(e2);
    }
    // E3 in D2.
    {
        std::array<double, 4> best{};
        double best_norm = -1.0;
        for (const auto& cand : flag.D2_basis) {
            auto w = orthogonalize(cand, frame);
            double n = inner(w, w);
            if (n > best_norm) {
                best_norm = n;
                best = w;
            }
        }
        auto e3 = normalize(best);
        std::vector<std::array<double, 4>> triple = {frame[0], frame[1], e3};
        if (orientation_vs(triple, flag.D2_basis.data(), 3) < 0)
            for (auto& x : e3) x = -x;
        frame.push_back(e3);
    }
    // E4 completes the chart orientation.
    {
        std::array<double, 4> best{};
        double best_norm = -1.0;
        for (int a = 0; a < 4; ++a) {
            std::array<double, 4> cand{};
            cand[a] = 1.0;
            auto w = orthogonalize(cand, frame);
            double n = inner(w, w);
            if (n > best_norm) {
                best_norm = n;
                best = w;
            }
        }
        auto e4 = normalize(best);
        std::array<std::array<double, 4>, 4> cols = {frame[0], frame[1], frame[2], e4};
        if (sgn(det4_double(cols)) != flag.chart_orientation)
            for (auto& x : e4) x = -x;
        frame.push_back(e4);
    }
    return {frame[0], frame[1], frame[2], frame[3]};
}

} // namespace engel

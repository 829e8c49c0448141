#include "engel/sections.hpp"

#include <cmath>

#include "engel/errors.hpp"
#include "engel/randgen.hpp"

namespace engel {

namespace {

// Bracket of the positively oriented frame pair.
VectorField oriented_bracket(const Frame2& fr) {
    auto [first, second] = fr.oriented_pair();
    return lie_bracket(*first, *second);
}

} // namespace

double SectionRep::residual_at(const FloatPoint& p) const {
    double d = std::abs(den.evaluate(p));
    double scale = kind == SectionKind::Delta1 ? d : d * d;
    scale = std::max(1.0, scale);
    auto n = numerators_at(p);
    return std::max(std::abs(n[0]), std::abs(n[1])) / scale;
}

Jacobian2x4 SectionRep::jacobian_at(const FloatPoint& p) const {
    Jacobian2x4 j;
    j.rows[0] = num1.gradient(p);
    j.rows[1] = num2.gradient(p);
    return j;
}

SectionRep delta1(const Frame2& fr, const Frame2& comp) {
    VectorField bracket = oriented_bracket(fr);
    QuotientComponents q = quotient_components(bracket, fr, comp);
    SectionRep s;
    s.kind = SectionKind::Delta1;
    s.num1 = std::move(q.num1);
    s.num2 = std::move(q.num2);
    s.den = std::move(q.den);
    s.frame = fr;
    s.complement = comp;
    s.extension_used = std::move(bracket);
    return s;
}

SectionRep delta2(const Frame2& fr, const Frame2& comp) {
    VectorField ext = oriented_bracket(fr);
    QuotientComponents c = quotient_components(ext, fr, comp);
    QuotientComponents d1 = quotient_components(lie_bracket(fr.x1(), ext), fr, comp);
    QuotientComponents d2 = quotient_components(lie_bracket(fr.x2(), ext), fr, comp);
    SectionRep s;
    s.kind = SectionKind::Delta2;
    s.num1 = c.num1 * d1.num2 - c.num2 * d1.num1;
    s.num2 = c.num1 * d2.num2 - c.num2 * d2.num1;
    s.den = std::move(c.den);
    s.frame = fr;
    s.complement = comp;
    s.extension_used = std::move(ext);
    return s;
}

WellDefinednessReport check_welldefined_delta2(const Frame2& fr, const Frame2& comp, int trials,
                                               std::uint64_t seed) {
    SectionRep s = delta2(fr, comp);
    Rng rng(seed);
    WellDefinednessReport report;
    report.trials = trials;

    for (int t = 0; t < trials; ++t) {
        // Random rational base point off the degenerate set of the complement.
        RatPoint p;
        Rational den_val = 0;
        for (int attempt = 0; attempt < 64; ++attempt) {
            p = rand_rat_point(rng);
            den_val = s.den.evaluate(p);
            if (den_val != 0) break;
        }
        if (den_val == 0) continue;

        // Perturbed extension of the frame bracket: adding plane-field
        // sections must not change the values.
        VectorField ext = s.extension_used + fr.x1() * rand_poly(rng) + fr.x2() * rand_poly(rng);

        // Test vector v = a(p) X1(p) + b(p) X2(p) with a full polynomial
        // extension a X1 + b X2.
        PolyExpr a = rand_poly(rng);
        PolyExpr b = rand_poly(rng);
        VectorField v_ext = fr.x1() * a + fr.x2() * b;
        VectorField bracket = lie_bracket(v_ext, ext);

        // Pointwise reduction mod the frame at p.
        std::array<std::array<Rational, 4>, 4> m;
        auto f1 = fr.x1().evaluate(p);
        auto f2 = fr.x2().evaluate(p);
        auto c1 = comp.x1().evaluate(p);
        auto c2 = comp.x2().evaluate(p);
        for (int i = 0; i < 4; ++i) m[0][i] = f1[i];
        for (int i = 0; i < 4; ++i) m[1][i] = f2[i];
        for (int i = 0; i < 4; ++i) m[2][i] = c1[i];
        for (int i = 0; i < 4; ++i) m[3][i] = c2[i];

        auto reduce = [&](const std::array<Rational, 4>& w) -> std::array<Rational, 2> {
            auto sol = solve4(m, w);
            if (!sol)
                throw Error(ErrorCode::DegenerateComplement,
                            "frame+complement degenerate at a sampled point");
            return {(*sol)[2], (*sol)[3]};
        };

        auto u = reduce(bracket.evaluate(p));
        auto cval = reduce(s.extension_used.evaluate(p)); // delta1 components at p
        Rational value = cval[0] * u[1] - cval[1] * u[0];

        Rational expected =
            (a.evaluate(p) * s.num1.evaluate(p) + b.evaluate(p) * s.num2.evaluate(p)) /
            (den_val * den_val);
        if (value != expected)
            throw Error(ErrorCode::WellDefinednessViolated,
                        "delta2 value depends on the extension at a sampled point");
        ++report.points_tested;
    }
    return report;
}

TransversalityInfo transversality_at(const SectionRep& s, const FloatPoint& p,
                                     const Tolerances& tol) {
    if (s.residual_at(p) > tol.transversality_tol)
        throw Error(ErrorCode::NotOnZeroSet, "point residual " + std::to_string(s.residual_at(p)) +
                                                 " exceeds tolerance");
    TransversalityInfo info;
    info.jacobian = s.jacobian_at(p);
    info.sv_ratio = jacobian_sv_ratio(info.jacobian);
    bool any_nonzero = false;
    for (const auto& row : info.jacobian.rows)
        for (double x : row)
            if (x != 0.0) any_nonzero = true;
    if (!any_nonzero)
        info.rank = 0;
    else
        info.rank = info.sv_ratio > tol.c_sv_ratio ? 2 : 1;
    return info;
}

ExactTransversalityInfo transversality_at_exact(const SectionRep& s, const RatPoint& p) {
    if (s.num1.evaluate(p) != 0 || s.num2.evaluate(p) != 0)
        throw Error(ErrorCode::NotOnZeroSet, "point is not an exact zero of the section");
    ExactTransversalityInfo info;
    for (int axis = 1; axis <= 4; ++axis) {
        info.jacobian[0][axis - 1] = s.num1.differentiate(axis).evaluate(p);
        info.jacobian[1][axis - 1] = s.num2.differentiate(axis).evaluate(p);
    }
    std::vector<std::array<Rational, 4>> cols = {info.jacobian[0], info.jacobian[1]};
    info.rank = exact_rank(cols);
    return info;
}

} // namespace engel

// Acceptance suite: chart-level checks with pinned tolerances, one PASS/FAIL
// line per criterion. Exits nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "engel/catalog.hpp"
#include "engel/charclasses.hpp"
#include "engel/errors.hpp"
#include "engel/flags.hpp"
#include "engel/framebuilder.hpp"
#include "engel/loci.hpp"
#include "engel/sections.hpp"

using namespace engel;

namespace {

struct Criterion {
    std::string name;
    std::function<bool(std::string&)> run;
};

bool expect(bool cond, const std::string& what, std::string& detail) {
    if (!cond && detail.empty()) detail = what;
    return cond;
}

Frame2 cform() { return catalog_get("C-form").frame; }
Frame2 comp12() { return Frame2(VectorField::coordinate(1), VectorField::coordinate(2)); }

// C1: growth (2,3,4) at 1000 random rational points, exact; line = span(d4).
bool c1_engel_verification(std::string& detail) {
    auto t0 = std::chrono::steady_clock::now();
    Frame2 fr = catalog_get("engel-canonical").frame;
    BracketFlag flag(fr, 3);
    Rng rng(101);
    bool ok = true;
    for (int i = 0; i < 1000 && ok; ++i) {
        GrowthVector g = growth_vector_at(flag, rand_rat_point(rng));
        ok = expect(g.dims == std::vector<int>{2, 3, 4} && !g.stalled,
                    "growth vector deviated at point " + std::to_string(i), detail);
    }
    for (int i = 0; i < 100 && ok; ++i) {
        auto [a, b] = engel_line_at(fr, rand_rat_point(rng));
        ok = expect(a == 0 && b == 1, "line is not span(d4) at point " + std::to_string(i), detail);
    }
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ok = expect(elapsed < 5.0, "runtime " + std::to_string(elapsed) + "s exceeds 5s", detail) && ok;
    return ok;
}

// C2: exact Jacobian anchor rows for delta1 and a grid-17 extraction.
bool c2_lemma1_anchor(std::string& detail) {
    auto t0 = std::chrono::steady_clock::now();
    SectionRep d1 = delta1(cform(), comp12());
    auto info = transversality_at_exact(d1, RatPoint{0, 0, 0, 0});
    std::array<Rational, 4> row0{0, 0, -2, 0};
    std::array<Rational, 4> row1{-1, 0, 0, 0};
    bool ok = expect(info.rank == 2, "rank != 2 at the origin", detail) &&
              expect(info.jacobian[0] == row0 && info.jacobian[1] == row1,
                     "Jacobian rows differ from the anchor values", detail);

    LocusResult res = extract_locus(d1, Box{}, 17, 1e-10);
    ok = expect(res.samples.size() >= 200,
                "only " + std::to_string(res.samples.size()) + " samples", detail) &&
         ok;
    for (const auto& s : res.samples) {
        ok = expect(std::abs(s.point[2]) <= 1e-8, "|x3| above 1e-8", detail) && ok;
        ok = expect(std::abs(s.point[0] + s.point[3] * s.point[3]) <= 1e-8, "|x1+x4^2| above 1e-8",
                    detail) &&
             ok;
        if (!ok) break;
    }
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ok = expect(elapsed < 30.0, "runtime " + std::to_string(elapsed) + "s exceeds 30s", detail) && ok;
    return ok;
}

// C3: delta2 transversality pattern and co-orientation reversal.
bool c3_lemma2_anchors(std::string& detail) {
    SectionRep d2 = delta2(cform(), comp12());
    auto at_c = transversality_at_exact(d2, RatPoint{0, 0, 0, 0});
    bool ok = expect(at_c.rank == 1, "delta2 rank at origin != 1", detail);

    LocusResult res = extract_locus(d2, Box{}, 11, 1e-10);
    int checked = 0;
    for (const auto& s : res.samples) {
        if (s.locus == LocusTag::C) continue;
        if (checked >= 50) break;
        auto info = transversality_at(d2, s.point);
        ok = expect(info.rank == 2, "non-transverse sample off C", detail) && ok;
        ++checked;
    }
    ok = expect(checked == 50, "fewer than 50 off-C samples", detail) && ok;

    ParamCurve s1_path = ParamCurve::from_exprs("0-t^2,0,0,t", -0.5, 0.5);
    ParamCurve s2_path = ParamCurve::from_exprs("0-t^4/4,0,t,0-t^2/2", -0.5, 0.5);
    ReversalReport r1 = reversal_check(d2, LocusTag::Sigma1, s1_path);
    ReversalReport r2 = reversal_check(d2, LocusTag::Sigma2, s2_path);
    ok = expect(r1.flipped, "no reversal on S1", detail) && ok;
    ok = expect(r2.flipped, "no reversal on S2", detail) && ok;

    SectionRep d1 = delta1(cform(), comp12());
    ReversalReport r3 = reversal_check(d1, LocusTag::Sigma1, s1_path);
    ok = expect(!r3.flipped, "canonical co-orientation reversed on S1", detail) && ok;
    return ok;
}

// C4: link consistency at 10 points of C.
bool c4_link_consistency(std::string& detail) {
    SectionRep d2 = delta2(cform(), comp12());
    bool ok = true;
    for (int i = 0; i < 10 && ok; ++i) {
        double x2 = -0.9 + 1.8 * i / 9.0;
        LinkReport report = link_consistency_at(d2, FloatPoint{0, x2, 0, 0}, 0.3);
        int plus = 0, minus = 0;
        for (int s : report.signs) (s > 0 ? plus : minus) += 1;
        ok = expect(report.points.size() == 4, "link point count != 4", detail) &&
             expect(report.sum == 0, "link signs do not cancel", detail) &&
             expect(plus == 2 && minus == 2, "link signs are not two plus and two minus", detail);
    }
    return ok;
}

// C5: pairing with the bounding 2-sphere.
bool c5_cycle_pairing(std::string& detail) {
    const char* fwd_json =
        "{\"coords\": [\"-0.25 + 0.6*sin(u)*cos(v)\", \"0\", \"0.6*sin(u)*sin(v)\", "
        "\"0.6*cos(u)\"], \"u\": [0, \"pi\"], \"v\": [0, \"2*pi\"]}";
    const char* rev_json =
        "{\"coords\": [\"-0.25 + 0.6*sin(u)*cos(0-v)\", \"0\", \"0.6*sin(u)*sin(0-v)\", "
        "\"0.6*cos(u)\"], \"u\": [0, \"pi\"], \"v\": [0, \"2*pi\"]}";
    ParamSurface cyc = ParamSurface::from_json(fwd_json);
    ParamSurface rev = ParamSurface::from_json(rev_json);

    SectionRep d1 = delta1(cform(), comp12());
    PairingReport r1 = intersect_cycle_report(d1, cyc, 64);
    bool ok = expect(r1.total == 0, "delta1 pairing != 0", detail) &&
              expect(r1.crossings.size() == 2, "delta1 crossing count != 2", detail);
    if (ok) {
        double root = std::sqrt(0.35);
        for (const auto& c : r1.crossings)
            ok = expect(std::abs(std::abs(c.point[3]) - root) <= 1e-8,
                        "crossing not at x4 = +-sqrt(0.35)", detail) &&
                 ok;
        ok = expect(r1.crossings[0].sign + r1.crossings[1].sign == 0, "signs do not cancel",
                    detail) &&
             ok;
    }

    SectionRep d2 = delta2(cform(), comp12());
    PairingReport r2 = intersect_cycle_report(d2, cyc, 64);
    ok = expect(r2.total == 0, "delta2 pairing != 0", detail) &&
         expect(r2.crossings.size() == 4, "delta2 crossing count != 4", detail) && ok;

    for (const SectionRep* s : {&d1, &d2}) {
        PairingReport f = intersect_cycle_report(*s, cyc, 64);
        PairingReport b = intersect_cycle_report(*s, rev, 64);
        ok = expect(f.crossings.size() == b.crossings.size(), "reversal changed crossing count",
                    detail) &&
             ok;
        for (const auto& cf : f.crossings) {
            bool matched = false;
            for (const auto& cb : b.crossings) {
                double d = 0.0;
                for (int k = 0; k < 4; ++k) d = std::max(d, std::abs(cf.point[k] - cb.point[k]));
                if (d < 1e-6) matched = cb.sign == -cf.sign;
                if (matched) break;
            }
            ok = expect(matched, "crossing sign did not negate under reversal", detail) && ok;
        }
    }
    return ok;
}

// C6: class formulas and the second-locus identity.
bool c6_class_formulas(std::string& detail) {
    RingPtr r = Z2RingPresentation::truncated_polynomial_ring({{"a", 1}}, 4);
    auto el = [&](const char* t) { return Z2RingElement::parse(r, t); };
    auto out = theorem2_classes(el("a"), el("a2"), el("a"), el("0"));
    bool ok = expect(out.sigma1.is_zero(), "sigma1 != 0", detail) &&
              expect(out.sigma2 == el("a2"), "sigma2 != a2", detail) &&
              expect(out.union_class == el("a2"), "union != a2", detail) &&
              expect(out.intersection.is_zero(), "intersection != 0", detail);

    std::vector<RingPtr> rings = {
        Z2RingPresentation::truncated_polynomial_ring({{"a", 1}}, 4),
        Z2RingPresentation::truncated_polynomial_ring({{"a", 1}, {"b", 1}}, 4),
        Z2RingPresentation::truncated_polynomial_ring({{"x", 1}, {"y", 2}}, 4),
    };
    Rng rng(107);
    for (const auto& ring : rings) {
        for (int i = 0; i < 100 && ok; ++i) {
            Z2RingElement w1D = random_element(ring, 1, rng);
            Z2RingElement w2D = random_element(ring, 2, rng);
            Z2RingElement w1Q = random_element(ring, 1, rng);
            Z2RingElement w2Q = random_element(ring, 2, rng);
            auto classes = theorem2_classes(w1D, w2D, w1Q, w2Q);
            Z2RingElement direct =
                ring_mul(w1D, w1D) + ring_mul(w1Q, w1D) + ring_mul(w1Q, w1Q) + w2Q;
            ok = expect(classes.sigma2 == classes.sigma1 + classes.union_class &&
                            classes.sigma2 == direct,
                        "second-locus identity failed", detail);
        }
    }
    return ok;
}

// C7: existence criterion triples.
bool c7_existence(std::string& detail) {
    return expect(existence_criterion({0, 0}), "(0,0) should admit", detail) &&
           expect(!existence_criterion({2, 0}), "(2,0) should not admit", detail) &&
           expect(existence_criterion({24, -16}), "(24,-16) should admit", detail);
}

// C8: delta2 extension-independence for every catalog entry.
bool c8_well_definedness(std::string& detail) {
    bool ok = true;
    for (const auto& name : catalog_names()) {
        CatalogEntry entry = catalog_get(name);
        try {
            auto report = check_welldefined_delta2(entry.frame, entry.complement, 50);
            ok = expect(report.points_tested == 50 && report.max_deviation_zero,
                        name + ": fewer than 50 points tested", detail) &&
                 ok;
        } catch (const Error& e) {
            ok = expect(false, name + ": " + e.what(), detail);
        }
    }
    return ok;
}

// C9: numeric growth agrees with exact growth at 200 points per entry.
bool c9_oracle_equivalence(std::string& detail) {
    Tolerances tol;
    Rng rng(109);
    bool ok = true;
    for (const auto& name : catalog_names()) {
        CatalogEntry entry = catalog_get(name);
        BracketFlag flag(entry.frame, 4);
        for (int i = 0; i < 200 && ok; ++i) {
            RatPoint p = rand_rat_point(rng);
            GrowthVector exact = growth_vector_at(flag, p);
            GrowthVector numeric = growth_vector_at(flag, to_float_point(p), tol.rank_rel_tol);
            ok = expect(exact == numeric, name + ": modes disagree at point " + std::to_string(i),
                        detail);
        }
    }
    return ok;
}

// C10: parallelization frames at 100 Engel points of two entries.
bool c10_parallelization(std::string& detail) {
    Rng rng(113);
    bool ok = true;
    for (const char* name : {"engel-canonical", "C-form"}) {
        Frame2 fr = catalog_get(name).frame;
        int done = 0;
        while (done < 100 && ok) {
            RatPoint rp = rand_rat_point(rng, 4, 4);
            if (!is_engel_at(fr, rp)) continue;
            FloatPoint p = to_float_point(rp);
            FlagAtPoint flag = canonical_flag_at(fr, +1, p);
            auto E = parallelization_frame_at(flag);
            double gram_residual = 0.0;
            for (int i = 0; i < 4; ++i) {
                for (int j = 0; j < 4; ++j) {
                    double dot = 0.0;
                    for (int k = 0; k < 4; ++k) dot += E[i][k] * E[j][k];
                    gram_residual = std::max(gram_residual, std::abs(dot - (i == j ? 1.0 : 0.0)));
                }
            }
            ok = expect(gram_residual < 1e-12, std::string(name) + ": Gram residual too large",
                        detail) &&
                 ok;

            double det = 0.0;
            {
                // 4x4 determinant by cofactor expansion.
                auto minor3 = [&](int skip_col) {
                    std::array<int, 3> c;
                    int n = 0;
                    for (int j = 0; j < 4; ++j)
                        if (j != skip_col) c[n++] = j;
                    return E[1][c[0]] * (E[2][c[1]] * E[3][c[2]] - E[2][c[2]] * E[3][c[1]]) -
                           E[1][c[1]] * (E[2][c[0]] * E[3][c[2]] - E[2][c[2]] * E[3][c[0]]) +
                           E[1][c[2]] * (E[2][c[0]] * E[3][c[1]] - E[2][c[1]] * E[3][c[0]]);
                };
                double sign = 1.0;
                for (int j = 0; j < 4; ++j) {
                    det += sign * E[0][j] * minor3(j);
                    sign = -sign;
                }
            }
            ok = expect(det > 0.0, std::string(name) + ": determinant not positive", detail) && ok;

            auto [a, b] = engel_line_at(fr, rp);
            auto f1 = fr.x1().evaluate(p);
            auto f2 = fr.x2().evaluate(p);
            std::array<double, 4> line{};
            double line_norm = 0.0, e_dot = 0.0;
            for (int k = 0; k < 4; ++k) {
                line[k] = to_double(a) * f1[k] + to_double(b) * f2[k];
                line_norm += line[k] * line[k];
                e_dot += line[k] * E[0][k];
            }
            line_norm = std::sqrt(line_norm);
            double sin_angle = std::sqrt(std::max(0.0, 1.0 - (e_dot / line_norm) * (e_dot / line_norm)));
            ok = expect(sin_angle < 1e-10, std::string(name) + ": E1 misaligned with the line",
                        detail) &&
                 ok;
            ++done;
        }
    }
    return ok;
}

} // namespace

int main() {
    std::vector<Criterion> criteria = {
        {"C1 engel verification (1000 exact points, line = span(d4), < 5s)", c1_engel_verification},
        {"C2 delta1 anchor Jacobian + grid-17 extraction (>= 200 samples, 1e-8, < 30s)",
         c2_lemma1_anchor},
        {"C3 delta2 transversality pattern and reversal checks", c3_lemma2_anchors},
        {"C4 link consistency at 10 points of C (4 points, signs sum 0)", c4_link_consistency},
        {"C5 bounding-sphere pairings (2 and 4 cancelling crossings, reversal negates)",
         c5_cycle_pairing},
        {"C6 class formulas in Z2[a]/(a^5) and the second-locus identity", c6_class_formulas},
        {"C7 existence criterion triples", c7_existence},
        {"C8 delta2 extension-independence (50 exact points per entry)", c8_well_definedness},
        {"C9 exact/numeric growth agreement (200 points per entry)", c9_oracle_equivalence},
        {"C10 parallelization frames (orthonormal, positive, line-aligned)", c10_parallelization},
    };

    int failures = 0;
    for (auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = e.what();
        }
        double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", c.name.c_str(), elapsed,
                    detail.empty() ? "" : " -- ", detail.c_str());
        if (!ok) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures;
}

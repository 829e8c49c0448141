#pragma once

#include <cstdint>

#include "engel/config.hpp"
#include "engel/fields.hpp"
#include "engel/linalg.hpp"

namespace engel {

enum class SectionKind { Delta1, Delta2 };

// Polynomial representative of an obstruction section.
//
// Delta1: (num1, num2)/den are the complement-basis components of the
// oriented frame bracket modulo the plane field; zeros (off den = 0) are the
// first degeneration surface.
//
// Delta2: (num1, num2)/den^2 are the dual-frame components of
// v -> delta1 ^ ([v, ext] mod D) with ext the stored bracket extension;
// zeros are the full degeneration set.
//
// Common polynomial factors are never cancelled: the numerator pair must
// carry the zero sets verbatim, multiplicities included.
struct SectionRep {
    SectionKind kind = SectionKind::Delta1;
    PolyExpr num1;
    PolyExpr num2;
    PolyExpr den;
    Frame2 frame;
    Frame2 complement;
    VectorField extension_used;

    std::array<double, 2> numerators_at(const FloatPoint& p) const {
        return {num1.evaluate(p), num2.evaluate(p)};
    }
    // max |numerator| / value scale at p; the scale is den (delta1) or den^2
    // (delta2), floored at 1.
    double residual_at(const FloatPoint& p) const;
    Jacobian2x4 jacobian_at(const FloatPoint& p) const;
};

SectionRep delta1(const Frame2& fr, const Frame2& comp);
SectionRep delta2(const Frame2& fr, const Frame2& comp);

struct WellDefinednessReport {
    int trials = 0;
    int points_tested = 0;
    // Exact arithmetic throughout, so any agreement failure throws; a
    // finished report always has zero deviation.
    bool max_deviation_zero = true;
};

// Re-derives the Delta2 values at random rational points with perturbed
// choices (bracket extension shifted by random plane-field sections, the
// test vector extended by random polynomial coefficients) and requires exact
// agreement with the stored numerators. Throws WellDefinednessViolated on
// mismatch; such a failure indicates an implementation bug.
WellDefinednessReport check_welldefined_delta2(const Frame2& fr, const Frame2& comp, int trials,
                                               std::uint64_t seed = 20240901u);

struct TransversalityInfo {
    int rank = 0;
    Jacobian2x4 jacobian;
    double sv_ratio = 0.0;
};

// Jacobian of the numerator pair at a point of the zero set; rank 2 means the
// section is transverse to the zero section there.
TransversalityInfo transversality_at(const SectionRep& s, const FloatPoint& p,
                                     const Tolerances& tol = {});

// Exact variant for rational points: entries and rank are exact.
struct ExactTransversalityInfo {
    int rank = 0;
    std::array<std::array<Rational, 4>, 2> jacobian{};
};

ExactTransversalityInfo transversality_at_exact(const SectionRep& s, const RatPoint& p);

} // namespace engel

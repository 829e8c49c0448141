#pragma once

#include <optional>
#include <string>
#include <vector>

#include "engel/cycles.hpp"
#include "engel/sections.hpp"

namespace engel {

enum class LocusTag { Sigma1, Sigma2, C };

const char* locus_tag_name(LocusTag tag); // "S1", "S2", "C"

struct LocusSample {
    FloatPoint point{};
    LocusTag locus = LocusTag::Sigma1;
    double residual = 0.0;
    int coorientation = 0; // +1 / -1 / 0 = undefined (non-transverse)
    std::array<std::array<double, 4>, 2> normal_frame{};
};

struct ExtractStats {
    long grid_points = 0;
    long seeds = 0;
    long newton_diverged = 0;
    long dropped_den = 0;
    long dropped_outside = 0;
    long merged_duplicates = 0;
};

struct LocusResult {
    std::vector<LocusSample> samples;
    ExtractStats stats;
};

// Grid-seeded Gauss-Newton zero-set extraction of the section's numerator
// pair over the box. Samples are refined to residual <= refine_tol, merged
// within half the grid spacing, tagged Sigma1/Sigma2/C and co-oriented where
// transverse. An empty result means no seeds survived, not a failure.
LocusResult extract_locus(const SectionRep& s, const Box& box, int grid, double refine_tol,
                          const Tolerances& tol = {});

// Sign of the section differential against the stored reference normal
// frame, in the oriented target basis (times the global sign convention).
// Fills sample.normal_frame. Throws NotTransverse at rank < 2 points.
int coorientation_sign(const SectionRep& s, LocusSample& sample, const Tolerances& tol = {});

// Sign against an explicitly given tangent/normal 2-frame at p.
int sign_against_frame(const SectionRep& s, const FloatPoint& p,
                       const std::array<double, 4>& v1, const std::array<double, 4>& v2,
                       const Tolerances& tol = {});

struct ReversalReport {
    int sign_start = 0;
    int sign_end = 0;
    bool flipped = false;
    bool expected_flip = false; // Delta2 co-orientations reverse across C
    bool consistent = false;
    int transverse_samples = 0;
    int nontransverse_samples = 0;
    std::vector<std::pair<double, int>> signs; // (t, sign) at transverse samples
};

// Walks a path lying on the given locus across the intersection curve,
// re-projecting each sample onto the locus, and tracks the section's
// co-orientation sign with a fixed reference frame along the whole path.
ReversalReport reversal_check(const SectionRep& s, LocusTag locus, const ParamCurve& path,
                              int samples = 41, const Tolerances& tol = {});

struct LinkReport {
    FloatPoint center{};
    double radius = 0.0;
    std::array<double, 4> c_tangent{};
    std::vector<FloatPoint> points;
    std::vector<int> signs;
    std::vector<LocusTag> tags;
    int sum = 0;
};

// Intersects a small 2-sphere, inside a 3-slice transverse to the curve C at
// c_point, with the section's zero set. Exactly 4 transverse points are
// expected; their co-orientation signs against the sphere orientation are
// reported with their sum. Throws WrongLinkCount otherwise.
LinkReport link_consistency_at(const SectionRep& s, const FloatPoint& c_point, double radius,
                               int grid = 48, const Tolerances& tol = {});

struct Crossing {
    double u = 0.0, v = 0.0;
    FloatPoint point{};
    int sign = 0;
};

struct PairingReport {
    int total = 0;
    std::vector<Crossing> crossings;
    int jitter_retries = 0;
};

// Signed count of the intersections of the section's zero set with a closed
// 2-cycle: grid + Newton on the parameter rectangle, each root contributing
// the sign of det [Ds(du), Ds(dv)]. The cycle must stay clear of C and of
// the complement-degeneracy set.
PairingReport intersect_cycle_report(const SectionRep& s, const ParamSurface& cyc, int grid = 48,
                                     const Tolerances& tol = {});
int intersect_cycle(const SectionRep& s, const ParamSurface& cyc, int grid = 48,
                    const Tolerances& tol = {});

// CSV/OBJ export (columns x1,x2,x3,x4,locus,sign,residual).
std::string locus_samples_to_csv(const std::vector<LocusSample>& samples);
std::string locus_samples_to_obj(const std::vector<LocusSample>& samples,
                                 const std::array<int, 3>& axes = {1, 2, 3});

} // namespace engel

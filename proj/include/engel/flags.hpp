#pragma once

#include <string>
#include <vector>

#include "engel/config.hpp"
#include "engel/fields.hpp"

namespace engel {

// Iterated bracket flag of a 2-frame: level 1 is the frame, and each next
// level appends the brackets of the frame fields with the generators that
// were new at the previous level. Module generators, exact polynomials.
class BracketFlag {
  public:
    BracketFlag(const Frame2& fr, int depth, const Tolerances& tol = {});

    int depth() const { return static_cast<int>(levels_.size()); }
    // Cumulative generator list for D^level, level in 1..depth().
    const std::vector<VectorField>& level(int level) const { return levels_[level - 1]; }
    const Frame2& frame() const { return frame_; }

  private:
    Frame2 frame_;
    std::vector<std::vector<VectorField>> levels_;
};

struct GrowthVector {
    // n_j for j = 1.., truncated at the first entry equal to 4; if the ranks
    // never reach 4 within the flag depth, all computed entries are kept and
    // the vector is flagged stalled.
    std::vector<int> dims;
    bool stalled = false;

    int stable_rank() const { return dims.empty() ? 0 : dims.back(); }
    bool operator==(const GrowthVector& other) const {
        return dims == other.dims && stalled == other.stalled;
    }
    std::string to_string() const;
};

// Componentwise partial order; the shorter vector is padded with its final
// value (vectors of different nonholonomy degree are comparable this way).
bool growth_leq(const GrowthVector& a, const GrowthVector& b);

GrowthVector growth_vector_at(const BracketFlag& flag, const RatPoint& p);
GrowthVector growth_vector_at(const BracketFlag& flag, const FloatPoint& p, double rank_rel_tol);

bool is_engel_at(const Frame2& fr, const RatPoint& p, const Tolerances& tol = {});
bool is_engel_at(const Frame2& fr, const FloatPoint& p, const Tolerances& tol = {});

// Direction (a, b) of the intrinsic line in the plane field at an Engel
// point, in frame coordinates, scaled so the coefficient of larger magnitude
// is 1. Computed as the kernel of the Delta2 functional at p.
std::pair<Rational, Rational> engel_line_at(const Frame2& fr, const RatPoint& p,
                                            const Tolerances& tol = {});

struct NilpotentizationData {
    // Graded basis adapted to the flag: e1, e2 span the plane field at p,
    // e3 = [e1,e2](p) class, e4 = coordinate complement of D^2.
    std::array<std::string, 4> basis_labels;
    int e4_axis = 0; // 1..4
    Rational alpha;  // [e1,e3] = alpha e4
    Rational beta;   // [e2,e3] = beta e4
    // After the basis change given by the Engel line (e2 replaced by a line
    // representative, e4 rescaled) the constants take the (1, 0) form.
    Rational normalized_alpha = 1;
    Rational normalized_beta = 0;
    std::pair<Rational, Rational> engel_direction;
};

NilpotentizationData nilpotentization_at(const Frame2& fr, const RatPoint& p,
                                         const Tolerances& tol = {});

} // namespace engel

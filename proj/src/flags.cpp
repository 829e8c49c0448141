#include "engel/flags.hpp"

#include <sstream>

#include "engel/errors.hpp"
#include "engel/linalg.hpp"
#include "engel/sections.hpp"

namespace engel {

BracketFlag::BracketFlag(const Frame2& fr, int depth, const Tolerances& tol) : frame_(fr) {
    if (depth < 1) throw Error(ErrorCode::InvalidArgument, "flag depth must be >= 1");
    if (depth > tol.depth_cap)
        throw Error(ErrorCode::InvalidArgument, "flag depth " + std::to_string(depth) +
                                                    " exceeds cap " + std::to_string(tol.depth_cap));
    std::vector<VectorField> current = {fr.x1(), fr.x2()};
    std::vector<VectorField> fresh = current;
    levels_.push_back(current);
    for (int level = 2; level <= depth; ++level) {
        std::vector<VectorField> next_fresh;
        next_fresh.reserve(2 * fresh.size());
        for (const VectorField* f : {&fr.x1(), &fr.x2()})
            for (const VectorField& b : fresh) next_fresh.push_back(lie_bracket(*f, b));
        current.insert(current.end(), next_fresh.begin(), next_fresh.end());
        levels_.push_back(current);
        fresh = std::move(next_fresh);
    }
}

std::string GrowthVector::to_string() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < dims.size(); ++i) {
        if (i) os << ",";
        os << dims[i];
    }
    os << ")";
    if (stalled) os << " stalled";
    return os.str();
}

bool growth_leq(const GrowthVector& a, const GrowthVector& b) {
    size_t n = std::max(a.dims.size(), b.dims.size());
    if (a.dims.empty() || b.dims.empty()) return a.dims.empty();
    for (size_t i = 0; i < n; ++i) {
        int ai = i < a.dims.size() ? a.dims[i] : a.dims.back();
        int bi = i < b.dims.size() ? b.dims[i] : b.dims.back();
        if (ai > bi) return false;
    }
    return true;
}

namespace {

template <typename Point, typename RankFn>
GrowthVector growth_from_ranks(const BracketFlag& flag, const Point& p, RankFn&& rank_of_level) {
    GrowthVector gv;
    for (int level = 1; level <= flag.depth(); ++level) {
        int r = rank_of_level(level);
        gv.dims.push_back(r);
        if (r == 4) return gv;
    }
    gv.stalled = true;
    return gv;
}

} // namespace

GrowthVector growth_vector_at(const BracketFlag& flag, const RatPoint& p) {
    return growth_from_ranks(flag, p, [&](int level) {
        std::vector<std::array<Rational, 4>> cols;
        cols.reserve(flag.level(level).size());
        for (const VectorField& g : flag.level(level)) cols.push_back(g.evaluate(p));
        return exact_rank(cols);
    });
}

GrowthVector growth_vector_at(const BracketFlag& flag, const FloatPoint& p, double rank_rel_tol) {
    return growth_from_ranks(flag, p, [&](int level) {
        std::vector<std::array<double, 4>> cols;
        cols.reserve(flag.level(level).size());
        for (const VectorField& g : flag.level(level)) cols.push_back(g.evaluate(p));
        return numeric_rank(cols, rank_rel_tol);
    });
}

namespace {
const GrowthVector kEngelGrowth{{2, 3, 4}, false};
}

bool is_engel_at(const Frame2& fr, const RatPoint& p, const Tolerances& tol) {
    BracketFlag flag(fr, 3, tol);
    return growth_vector_at(flag, p) == kEngelGrowth;
}

bool is_engel_at(const Frame2& fr, const FloatPoint& p, const Tolerances& tol) {
    BracketFlag flag(fr, 3, tol);
    return growth_vector_at(flag, p, tol.rank_rel_tol) == kEngelGrowth;
}

namespace {

// First complement pair (axes) whose determinant against the frame does not
// vanish at p; the Delta2 kernel does not depend on this choice.
Frame2 default_complement_at(const Frame2& fr, const RatPoint& p) {
    auto f1 = fr.x1().evaluate(p);
    auto f2 = fr.x2().evaluate(p);
    for (int a = 0; a < 4; ++a) {
        for (int b = a + 1; b < 4; ++b) {
            std::array<std::array<Rational, 4>, 4> m{};
            m[0] = f1;
            m[1] = f2;
            m[2][a] = 1;
            m[3][b] = 1;
            if (det4_rational(m) != 0)
                return Frame2(VectorField::coordinate(a + 1), VectorField::coordinate(b + 1));
        }
    }
    throw Error(ErrorCode::DegenerateComplement, "frame fields are dependent at the point");
}

std::pair<Rational, Rational> normalize_larger_to_one(Rational a, Rational b) {
    Rational scale = abs(a) >= abs(b) ? a : b;
    if (scale == 0) throw Error(ErrorCode::NotEngelPoint, "zero kernel direction");
    return {a / scale, b / scale};
}

} // namespace

std::pair<Rational, Rational> engel_line_at(const Frame2& fr, const RatPoint& p,
                                            const Tolerances& tol) {
    if (!is_engel_at(fr, p, tol))
        throw Error(ErrorCode::NotEngelPoint, "growth vector is not (2,3,4) at the point");
    Frame2 comp = default_complement_at(fr, p);
    SectionRep d2 = delta2(fr, comp);
    Rational v1 = d2.num1.evaluate(p);
    Rational v2 = d2.num2.evaluate(p);
    // Kernel of (a,b) -> a v1 + b v2.
    return normalize_larger_to_one(v2, -v1);
}

NilpotentizationData nilpotentization_at(const Frame2& fr, const RatPoint& p,
                                         const Tolerances& tol) {
    if (!is_engel_at(fr, p, tol))
        throw Error(ErrorCode::NotEngelPoint, "growth vector is not (2,3,4) at the point");

    VectorField delta = lie_bracket(fr.x1(), fr.x2());
    auto f1 = fr.x1().evaluate(p);
    auto f2 = fr.x2().evaluate(p);
    auto d = delta.evaluate(p);

    // e4: coordinate axis completing (e1, e2, e3) to a basis; choose the one
    // with the largest determinant magnitude for stability, ties to the
    // lowest axis.
    int best_axis = -1;
    Rational best_abs = 0;
    for (int a = 0; a < 4; ++a) {
        std::array<std::array<Rational, 4>, 4> m{};
        m[0] = f1;
        m[1] = f2;
        m[2] = d;
        m[3][a] = 1;
        Rational v = abs(det4_rational(m));
        if (v > best_abs) {
            best_abs = v;
            best_axis = a;
        }
    }
    if (best_axis < 0) throw Error(ErrorCode::NotEngelPoint, "no complement axis found");

    std::array<std::array<Rational, 4>, 4> m{};
    m[0] = f1;
    m[1] = f2;
    m[2] = d;
    m[3][best_axis] = 1;

    auto v3_component = [&](const VectorField& field) {
        auto sol = solve4(m, field.evaluate(p));
        if (!sol) throw Error(ErrorCode::NotEngelPoint, "flag basis degenerate at the point");
        return (*sol)[3];
    };

    NilpotentizationData data;
    data.e4_axis = best_axis + 1;
    data.alpha = v3_component(lie_bracket(fr.x1(), delta));
    data.beta = v3_component(lie_bracket(fr.x2(), delta));
    data.basis_labels = {"X1(p)", "X2(p)", "[X1,X2](p) mod D", "d" + std::to_string(best_axis + 1) +
                                                                   " mod D2"};
    data.engel_direction = engel_line_at(fr, p, tol);
    // Replacing e2 by the Engel direction kills beta by definition; rescaling
    // e4 by the remaining alpha yields the (1, 0) normal form.
    data.normalized_alpha = 1;
    data.normalized_beta = 0;
    return data;
}

} // namespace engel

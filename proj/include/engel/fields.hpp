#pragma once

#include <array>
#include <string>

#include "engel/poly.hpp"

namespace engel {

// Polynomial vector field: coefficients of d1..d4.
class VectorField {
  public:
    VectorField() = default;
    VectorField(PolyExpr c1, PolyExpr c2, PolyExpr c3, PolyExpr c4)
        : comps_{std::move(c1), std::move(c2), std::move(c3), std::move(c4)} {}

    static VectorField coordinate(int axis); // d_axis

    const PolyExpr& operator[](int i) const { return comps_[i]; }
    PolyExpr& operator[](int i) { return comps_[i]; }

    bool is_zero() const;
    VectorField operator+(const VectorField& other) const;
    VectorField operator-(const VectorField& other) const;
    VectorField operator-() const;
    VectorField operator*(const PolyExpr& f) const; // f * V
    bool operator==(const VectorField& other) const { return comps_ == other.comps_; }

    // Directional derivative V(f) = sum_j V_j d_j f.
    PolyExpr apply(const PolyExpr& f) const;

    std::array<Rational, 4> evaluate(const RatPoint& p) const;
    std::array<double, 4> evaluate(const FloatPoint& p) const;

    std::string to_string() const; // in terms of d1..d4

  private:
    std::array<PolyExpr, 4> comps_;
};

// Polynomial 1-form: coefficients of dx1..dx4.
class OneForm {
  public:
    OneForm() = default;
    OneForm(PolyExpr c1, PolyExpr c2, PolyExpr c3, PolyExpr c4)
        : comps_{std::move(c1), std::move(c2), std::move(c3), std::move(c4)} {}

    static OneForm coordinate(int axis); // dx_axis

    const PolyExpr& operator[](int i) const { return comps_[i]; }
    PolyExpr& operator[](int i) { return comps_[i]; }
    bool operator==(const OneForm& other) const { return comps_ == other.comps_; }

    // Pointwise pairing omega(V), an exact polynomial.
    PolyExpr pair(const VectorField& v) const;

    std::string to_string() const; // in terms of dx1..dx4

  private:
    std::array<PolyExpr, 4> comps_;
};

// Standard commutator [V,W]_i = sum_j (V_j d_j W_i - W_j d_j V_i).
VectorField lie_bracket(const VectorField& v, const VectorField& w);

// Oriented 2-frame. orientation = +1 means the ordered pair (x1(), x2()) is
// the positive orientation of the plane field.
class Frame2 {
  public:
    Frame2() = default;
    Frame2(VectorField a, VectorField b, int orientation = +1)
        : a_(std::move(a)), b_(std::move(b)), orientation_(orientation) {}

    const VectorField& x1() const { return a_; }
    const VectorField& x2() const { return b_; }
    int orientation() const { return orientation_; }

    // (x1,x2) if orientation is +1, else (x2,x1).
    std::pair<const VectorField*, const VectorField*> oriented_pair() const;

    Frame2 with_orientation(int sign) const { return Frame2(a_, b_, sign); }

  private:
    VectorField a_, b_;
    int orientation_ = +1;
};

class Coframe2 {
  public:
    Coframe2() = default;
    Coframe2(OneForm a, OneForm b, int orientation = +1)
        : a_(std::move(a)), b_(std::move(b)), orientation_(orientation) {}

    const OneForm& w1() const { return a_; }
    const OneForm& w2() const { return b_; }
    int orientation() const { return orientation_; }

  private:
    OneForm a_, b_;
    int orientation_ = +1;
};

struct Box {
    std::array<double, 4> lo{-1.0, -1.0, -1.0, -1.0};
    std::array<double, 4> hi{1.0, 1.0, 1.0, 1.0};
};

// Pointwise linear-independence check on a sample grid; throws SemanticError
// on the first violating grid point. Used at model/catalog load time.
void validate_frame_on_box(const Frame2& fr, const Box& box, int grid_per_axis = 5);

// Kernel frame of a solved-form coframe: each w_i has unit coefficient on a
// distinct solved axis and zero on the other one. The two free axes, in
// increasing order, give the output fields by back-substitution.
Frame2 coframe_to_frame(const Coframe2& cf);

// det of the 4x4 matrix whose columns are the given fields.
PolyExpr det4(const std::array<const VectorField*, 4>& cols);

struct QuotientComponents {
    PolyExpr num1;
    PolyExpr num2;
    PolyExpr den;
};

// Components of V modulo span(fr) in the complement basis, by Cramer's rule:
// den * V = num1 * comp1 + num2 * comp2  (mod span(fr)), den = det(fr, comp).
QuotientComponents quotient_components(const VectorField& v, const Frame2& fr, const Frame2& comp);

} // namespace engel

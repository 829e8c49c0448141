#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>

#include "engel/rational.hpp"

namespace engel {

// Exponent 4-tuple of a monomial in the chart coordinates x1..x4.
using Mono = std::array<int, 4>;

// Exact multivariate polynomial over the rationals in x1..x4.
// Canonical form: no stored term has a zero coefficient, so two PolyExprs are
// equal iff their term maps are identical.
class PolyExpr {
  public:
    PolyExpr() = default;
    explicit PolyExpr(const Rational& constant);
    explicit PolyExpr(long constant) : PolyExpr(Rational(constant)) {}

    // x_axis with axis in 1..4.
    static PolyExpr variable(int axis);
    static PolyExpr monomial(const Rational& coeff, const Mono& exponents);

    const std::map<Mono, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int total_degree() const; // -1 for the zero polynomial

    PolyExpr operator-() const;
    PolyExpr operator+(const PolyExpr& other) const;
    PolyExpr operator-(const PolyExpr& other) const;
    PolyExpr operator*(const PolyExpr& other) const;
    PolyExpr operator*(const Rational& scalar) const;
    PolyExpr pow(int exponent) const;

    PolyExpr& operator+=(const PolyExpr& other);
    PolyExpr& operator-=(const PolyExpr& other);

    bool operator==(const PolyExpr& other) const { return terms_ == other.terms_; }
    bool operator!=(const PolyExpr& other) const { return !(*this == other); }

    PolyExpr differentiate(int axis) const;
    Rational evaluate(const RatPoint& p) const;
    double evaluate(const FloatPoint& p) const;
    // Gradient evaluated in double precision.
    std::array<double, 4> gradient(const FloatPoint& p) const;

    // Replace x_axis by the given polynomial.
    PolyExpr substitute(int axis, const PolyExpr& replacement) const;

    // Deterministic text form, e.g. "-2*x3 + 1/3*x1^2*x4".
    std::string to_string() const;

  private:
    void add_term(const Mono& exponents, const Rational& coeff);
    std::map<Mono, Rational> terms_;
};

} // namespace engel

#pragma once

#include <array>
#include <memory>
#include <string>

#include "engel/rational.hpp"

namespace engel {

// Small numeric expression tree for cycle and path parametrizations:
// rationals, the parameters (u, v) or (t), + - * / ^, sin, cos, pi.
// Immutable; derivative() builds the symbolic derivative tree.
class ParamExpr {
  public:
    ParamExpr(); // zero
    static ParamExpr constant(double value);
    static ParamExpr parameter(int index); // 0 = u (or t), 1 = v

    ParamExpr operator+(const ParamExpr& other) const;
    ParamExpr operator-(const ParamExpr& other) const;
    ParamExpr operator*(const ParamExpr& other) const;
    ParamExpr operator-() const;
    ParamExpr pow(int exponent) const;
    static ParamExpr sin(const ParamExpr& arg);
    static ParamExpr cos(const ParamExpr& arg);

    double eval(double u, double v = 0.0) const;
    ParamExpr derivative(int index) const;

    struct Node; // implementation detail, public for the evaluator

  private:
    explicit ParamExpr(std::shared_ptr<const Node> node);
    std::shared_ptr<const Node> node_;
};

// Parses an expression in the named parameters (e.g. {"u","v"} or {"t"}).
// Throws ParseError with position info on malformed input.
ParamExpr parse_param_expr(const std::string& text, const std::array<std::string, 2>& params,
                           int n_params);

// Closed parametrized surface (u,v) -> chart point on [u_min,u_max] x
// [v_min,v_max]; orientation is the ordered pair (d/du, d/dv). Boundary
// edges must be periodic or collapse to a point (verified numerically).
class ParamSurface {
  public:
    ParamSurface(std::array<ParamExpr, 4> coords, double u_min, double u_max, double v_min,
                 double v_max);

    FloatPoint at(double u, double v) const;
    std::array<double, 4> tangent_u(double u, double v) const;
    std::array<double, 4> tangent_v(double u, double v) const;

    double u_min() const { return u_min_; }
    double u_max() const { return u_max_; }
    double v_min() const { return v_min_; }
    double v_max() const { return v_max_; }

    // Largest coordinate span over a sample grid; used as the length scale.
    double extent(int samples = 24) const;

    ParamSurface translated(const FloatPoint& offset) const;

    // Throws SemanticError when a boundary edge is neither periodic nor
    // collapsed (within eps, relative to the surface extent).
    void verify_closed(int samples = 24, double rel_eps = 1e-7) const;

    // Round sphere of the given radius about center inside the affine
    // 3-space center + span(b1,b2,b3), standard (colatitude, longitude)
    // parametrization.
    static ParamSurface sphere(const FloatPoint& center, double radius,
                               const std::array<double, 4>& b1, const std::array<double, 4>& b2,
                               const std::array<double, 4>& b3);

    // Load from JSON: {"coords": [4 strings in u,v], "u": [lo, hi], "v": [lo, hi]}
    // (bounds may be numbers or expressions such as "2*pi").
    static ParamSurface from_json(const std::string& json_text);

  private:
    std::array<ParamExpr, 4> coords_;
    std::array<ParamExpr, 4> du_;
    std::array<ParamExpr, 4> dv_;
    double u_min_, u_max_, v_min_, v_max_;
};

// Parametrized curve t -> chart point.
class ParamCurve {
  public:
    ParamCurve(std::array<ParamExpr, 4> coords, double t0, double t1);

    FloatPoint at(double t) const;
    double t0() const { return t0_; }
    double t1() const { return t1_; }

    // Coordinates given as 4 comma-separated expressions in t.
    static ParamCurve from_exprs(const std::string& comma_separated, double t0, double t1);

  private:
    std::array<ParamExpr, 4> coords_;
    double t0_, t1_;
};

} // namespace engel

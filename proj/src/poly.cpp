#include "engel/poly.hpp"

#include <atomic>
#include <sstream>

#include "engel/config.hpp"
#include "engel/errors.hpp"

namespace engel {

namespace {
std::atomic<int> g_degree_cap{64};

int mono_degree(const Mono& m) { return m[0] + m[1] + m[2] + m[3]; }
} // namespace

int degree_cap() { return g_degree_cap.load(); }
void set_degree_cap(int cap) { g_degree_cap.store(cap); }

std::string rational_to_string(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

Rational rational_from_string(const std::string& text) { return Rational(text); }

PolyExpr::PolyExpr(const Rational& constant) {
    if (constant != 0) terms_[{0, 0, 0, 0}] = constant;
}

PolyExpr PolyExpr::variable(int axis) {
    if (axis < 1 || axis > 4) throw Error(ErrorCode::InvalidArgument, "axis must be 1..4");
    Mono m{0, 0, 0, 0};
    m[axis - 1] = 1;
    PolyExpr p;
    p.terms_[m] = 1;
    return p;
}

PolyExpr PolyExpr::monomial(const Rational& coeff, const Mono& exponents) {
    PolyExpr p;
    if (coeff != 0) p.terms_[exponents] = coeff;
    return p;
}

int PolyExpr::total_degree() const {
    int deg = -1;
    for (const auto& [m, c] : terms_) deg = std::max(deg, mono_degree(m));
    return deg;
}

void PolyExpr::add_term(const Mono& exponents, const Rational& coeff) {
    auto it = terms_.find(exponents);
    if (it == terms_.end()) {
        if (coeff != 0) terms_.emplace(exponents, coeff);
        return;
    }
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
}

PolyExpr PolyExpr::operator-() const {
    PolyExpr out;
    for (const auto& [m, c] : terms_) out.terms_[m] = -c;
    return out;
}

PolyExpr PolyExpr::operator+(const PolyExpr& other) const {
    PolyExpr out = *this;
    out += other;
    return out;
}

PolyExpr PolyExpr::operator-(const PolyExpr& other) const {
    PolyExpr out = *this;
    out -= other;
    return out;
}

PolyExpr& PolyExpr::operator+=(const PolyExpr& other) {
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
}

PolyExpr& PolyExpr::operator-=(const PolyExpr& other) {
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
}

PolyExpr PolyExpr::operator*(const PolyExpr& other) const {
    if (is_zero() || other.is_zero()) return PolyExpr();
    const int cap = degree_cap();
    if (total_degree() + other.total_degree() > cap)
        throw Error(ErrorCode::DegreeCapExceeded,
                    "product degree " + std::to_string(total_degree() + other.total_degree()) +
                        " exceeds cap " + std::to_string(cap));
    PolyExpr out;
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : other.terms_) {
            Mono m{ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2], ma[3] + mb[3]};
            out.add_term(m, ca * cb);
        }
    }
    return out;
}

PolyExpr PolyExpr::operator*(const Rational& scalar) const {
    PolyExpr out;
    if (scalar == 0) return out;
    for (const auto& [m, c] : terms_) out.terms_[m] = c * scalar;
    return out;
}

PolyExpr PolyExpr::pow(int exponent) const {
    if (exponent < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent");
    PolyExpr out(Rational(1));
    for (int i = 0; i < exponent; ++i) out = out * (*this);
    return out;
}

PolyExpr PolyExpr::differentiate(int axis) const {
    if (axis < 1 || axis > 4) throw Error(ErrorCode::InvalidArgument, "axis must be 1..4");
    const int k = axis - 1;
    PolyExpr out;
    for (const auto& [m, c] : terms_) {
        if (m[k] == 0) continue;
        Mono d = m;
        d[k] -= 1;
        out.add_term(d, c * m[k]);
    }
    return out;
}

Rational PolyExpr::evaluate(const RatPoint& p) const {
    Rational acc = 0;
    for (const auto& [m, c] : terms_) {
        Rational term = c;
        for (int k = 0; k < 4; ++k)
            for (int e = 0; e < m[k]; ++e) term *= p[k];
        acc += term;
    }
    return acc;
}

double PolyExpr::evaluate(const FloatPoint& p) const {
    double acc = 0.0;
    for (const auto& [m, c] : terms_) {
        double term = to_double(c);
        for (int k = 0; k < 4; ++k)
            for (int e = 0; e < m[k]; ++e) term *= p[k];
        acc += term;
    }
    return acc;
}

std::array<double, 4> PolyExpr::gradient(const FloatPoint& p) const {
    std::array<double, 4> g{};
    for (int axis = 1; axis <= 4; ++axis) g[axis - 1] = differentiate(axis).evaluate(p);
    return g;
}

PolyExpr PolyExpr::substitute(int axis, const PolyExpr& replacement) const {
    const int k = axis - 1;
    PolyExpr out;
    for (const auto& [m, c] : terms_) {
        Mono rest = m;
        rest[k] = 0;
        PolyExpr term = PolyExpr::monomial(c, rest) * replacement.pow(m[k]);
        out += term;
    }
    return out;
}

std::string PolyExpr::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational coeff = c;
        if (first) {
            if (coeff < 0) {
                os << "-";
                coeff = -coeff;
            }
        } else {
            os << (coeff < 0 ? " - " : " + ");
            if (coeff < 0) coeff = -coeff;
        }
        first = false;
        bool has_vars = mono_degree(m) > 0;
        bool coeff_shown = !has_vars || coeff != 1;
        if (coeff_shown) os << coeff;
        bool need_star = coeff_shown;
        for (int k = 0; k < 4; ++k) {
            if (m[k] == 0) continue;
            if (need_star) os << "*";
            os << "x" << (k + 1);
            if (m[k] > 1) os << "^" << m[k];
            need_star = true;
        }
    }
    return os.str();
}

} // namespace engel

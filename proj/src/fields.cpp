#include "engel/fields.hpp"

#include <cmath>
#include <sstream>

#include "engel/errors.hpp"

namespace engel {

VectorField VectorField::coordinate(int axis) {
    VectorField v;
    v[axis - 1] = PolyExpr(Rational(1));
    return v;
}

bool VectorField::is_zero() const {
    return comps_[0].is_zero() && comps_[1].is_zero() && comps_[2].is_zero() && comps_[3].is_zero();
}

VectorField VectorField::operator+(const VectorField& other) const {
    VectorField out;
    for (int i = 0; i < 4; ++i) out[i] = comps_[i] + other[i];
    return out;
}

VectorField VectorField::operator-(const VectorField& other) const {
    VectorField out;
    for (int i = 0; i < 4; ++i) out[i] = comps_[i] - other[i];
    return out;
}

VectorField VectorField::operator-() const {
    VectorField out;
    for (int i = 0; i < 4; ++i) out[i] = -comps_[i];
    return out;
}

VectorField VectorField::operator*(const PolyExpr& f) const {
    VectorField out;
    for (int i = 0; i < 4; ++i) out[i] = f * comps_[i];
    return out;
}

PolyExpr VectorField::apply(const PolyExpr& f) const {
    PolyExpr out;
    for (int j = 0; j < 4; ++j) out += comps_[j] * f.differentiate(j + 1);
    return out;
}

std::array<Rational, 4> VectorField::evaluate(const RatPoint& p) const {
    return {comps_[0].evaluate(p), comps_[1].evaluate(p), comps_[2].evaluate(p), comps_[3].evaluate(p)};
}

std::array<double, 4> VectorField::evaluate(const FloatPoint& p) const {
    return {comps_[0].evaluate(p), comps_[1].evaluate(p), comps_[2].evaluate(p), comps_[3].evaluate(p)};
}

std::string VectorField::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < 4; ++i) {
        if (comps_[i].is_zero()) continue;
        if (!first) os << " + ";
        os << "(" << comps_[i].to_string() << ")*d" << (i + 1);
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

OneForm OneForm::coordinate(int axis) {
    OneForm w;
    w[axis - 1] = PolyExpr(Rational(1));
    return w;
}

PolyExpr OneForm::pair(const VectorField& v) const {
    PolyExpr out;
    for (int i = 0; i < 4; ++i) out += comps_[i] * v[i];
    return out;
}

std::string OneForm::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < 4; ++i) {
        if (comps_[i].is_zero()) continue;
        if (!first) os << " + ";
        os << "(" << comps_[i].to_string() << ")*dx" << (i + 1);
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

VectorField lie_bracket(const VectorField& v, const VectorField& w) {
    VectorField out;
    for (int i = 0; i < 4; ++i) {
        PolyExpr acc;
        for (int j = 0; j < 4; ++j) {
            acc += v[j] * w[i].differentiate(j + 1);
            acc -= w[j] * v[i].differentiate(j + 1);
        }
        out[i] = acc;
    }
    return out;
}

std::pair<const VectorField*, const VectorField*> Frame2::oriented_pair() const {
    if (orientation_ >= 0) return {&a_, &b_};
    return {&b_, &a_};
}

void validate_frame_on_box(const Frame2& fr, const Box& box, int grid_per_axis) {
    const int n = std::max(2, grid_per_axis);
    std::array<double, 4> step;
    for (int k = 0; k < 4; ++k) step[k] = (box.hi[k] - box.lo[k]) / (n - 1);
    std::array<int, 4> idx{0, 0, 0, 0};
    while (true) {
        FloatPoint p;
        for (int k = 0; k < 4; ++k) p[k] = box.lo[k] + idx[k] * step[k];
        auto a = fr.x1().evaluate(p);
        auto b = fr.x2().evaluate(p);
        // Gram determinant of the two rows; zero iff dependent.
        double aa = 0, ab = 0, bb = 0;
        for (int k = 0; k < 4; ++k) {
            aa += a[k] * a[k];
            ab += a[k] * b[k];
            bb += b[k] * b[k];
        }
        double gram = aa * bb - ab * ab;
        double scale = std::max(aa, bb);
        if (scale == 0.0 || gram <= 1e-18 * scale * scale)
            throw Error(ErrorCode::SemanticError,
                        "frame fields are linearly dependent at (" + std::to_string(p[0]) + ", " +
                            std::to_string(p[1]) + ", " + std::to_string(p[2]) + ", " +
                            std::to_string(p[3]) + ")");
        int k = 3;
        while (k >= 0 && ++idx[k] == n) idx[k--] = 0;
        if (k < 0) break;
    }
}

Frame2 coframe_to_frame(const Coframe2& cf) {
    const OneForm& w1 = cf.w1();
    const OneForm& w2 = cf.w2();
    const PolyExpr one(Rational(1));
    const PolyExpr zero;

    // Find distinct solved axes (a1, a2): w1[a1] = 1, w2[a2] = 1, w1[a2] = 0, w2[a1] = 0.
    int a1 = -1, a2 = -1;
    for (int i = 0; i < 4 && a1 < 0; ++i) {
        if (w1[i] != one) continue;
        for (int j = 0; j < 4; ++j) {
            if (j == i || w2[j] != one) continue;
            if (w1[j] == zero && w2[i] == zero) {
                a1 = i;
                a2 = j;
                break;
            }
        }
    }
    if (a1 < 0) throw Error(ErrorCode::NotSolvedForm, "coframe has no unit-pivot pair");

    std::array<int, 2> free_axes;
    int n = 0;
    for (int k = 0; k < 4; ++k)
        if (k != a1 && k != a2) free_axes[n++] = k;

    std::array<VectorField, 2> fields;
    for (int t = 0; t < 2; ++t) {
        int b = free_axes[t];
        VectorField v = VectorField::coordinate(b + 1);
        v[a1] = -w1[b];
        v[a2] = -w2[b];
        fields[t] = v;
    }

    Frame2 fr(fields[0], fields[1], cf.orientation());
    // The kernel fields must annihilate both forms identically.
    for (const OneForm* w : {&w1, &w2})
        for (const VectorField* v : {&fr.x1(), &fr.x2()})
            if (!w->pair(*v).is_zero())
                throw Error(ErrorCode::NotSolvedForm, "kernel solve failed to annihilate coframe");
    return fr;
}

PolyExpr det4(const std::array<const VectorField*, 4>& cols) {
    // Cofactor expansion along the first column, 3x3 minors by Sarrus.
    auto minor3 = [&](int skip_row) {
        std::array<int, 3> r;
        int n = 0;
        for (int i = 0; i < 4; ++i)
            if (i != skip_row) r[n++] = i;
        const VectorField& c1 = *cols[1];
        const VectorField& c2 = *cols[2];
        const VectorField& c3 = *cols[3];
        PolyExpr det = c1[r[0]] * (c2[r[1]] * c3[r[2]] - c2[r[2]] * c3[r[1]]);
        det -= c1[r[1]] * (c2[r[0]] * c3[r[2]] - c2[r[2]] * c3[r[0]]);
        det += c1[r[2]] * (c2[r[0]] * c3[r[1]] - c2[r[1]] * c3[r[0]]);
        return det;
    };
    PolyExpr out;
    Rational sign = 1;
    for (int i = 0; i < 4; ++i) {
        const PolyExpr& head = (*cols[0])[i];
        if (!head.is_zero()) out += head * minor3(i) * sign;
        sign = -sign;
    }
    return out;
}

QuotientComponents quotient_components(const VectorField& v, const Frame2& fr, const Frame2& comp) {
    const VectorField& f1 = fr.x1();
    const VectorField& f2 = fr.x2();
    const VectorField& c1 = comp.x1();
    const VectorField& c2 = comp.x2();
    PolyExpr den = det4({&f1, &f2, &c1, &c2});
    if (den.is_zero())
        throw Error(ErrorCode::DegenerateComplement, "det(frame, complement) vanishes identically");
    QuotientComponents out;
    out.num1 = det4({&f1, &f2, &v, &c2});
    out.num2 = det4({&f1, &f2, &c1, &v});
    out.den = std::move(den);
    return out;
}

} // namespace engel

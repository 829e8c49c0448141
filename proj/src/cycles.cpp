#include "engel/cycles.hpp"

#include <cctype>
#include <cmath>
#include <vector>

#include <json.hpp>

#include "engel/errors.hpp"

namespace engel {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

struct ParamExpr::Node {
    enum class Kind { Const, Param, Add, Mul, Neg, Pow, Sin, Cos } kind;
    double value = 0.0; // Const
    int index = 0;      // Param / Pow exponent
    std::shared_ptr<const Node> a, b;
};

ParamExpr::ParamExpr() : node_(std::make_shared<Node>(Node{Node::Kind::Const, 0.0, 0, nullptr, nullptr})) {}

ParamExpr::ParamExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

ParamExpr ParamExpr::constant(double value) {
    return ParamExpr(std::make_shared<Node>(Node{Node::Kind::Const, value, 0, nullptr, nullptr}));
}

ParamExpr ParamExpr::parameter(int index) {
    return ParamExpr(std::make_shared<Node>(Node{Node::Kind::Param, 0.0, index, nullptr, nullptr}));
}

ParamExpr ParamExpr::operator+(const ParamExpr& other) const {
    return ParamExpr(std::make_shared<Node>(Node{Node::Kind::Add, 0.0, 0, node_, other.node_}));
}

ParamExpr ParamExpr::operator-(const ParamExpr& other) const { return *this + (-other); }

ParamExpr ParamExpr::operator*(const ParamExpr& other) const {
    return ParamExpr(std::make_shared<Node>(Node{Node::Kind::Mul, 0.0, 0, node_, other.node_}));
}

ParamExpr ParamExpr::operator-() const {
    return ParamExpr(std::make_shared<Node>(Node{Node::Kind::Neg, 0.0, 0, node_, nullptr}));
}

ParamExpr ParamExpr::pow(int exponent) const {
    if (exponent < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent");
    return ParamExpr(std::make_shared<Node>(Node{Node::Kind::Pow, 0.0, exponent, node_, nullptr}));
}

ParamExpr ParamExpr::sin(const ParamExpr& arg) {
    return ParamExpr(std::make_shared<Node>(Node{Node::Kind::Sin, 0.0, 0, arg.node_, nullptr}));
}

ParamExpr ParamExpr::cos(const ParamExpr& arg) {
    return ParamExpr(std::make_shared<Node>(Node{Node::Kind::Cos, 0.0, 0, arg.node_, nullptr}));
}

namespace {

double eval_node(const ParamExpr::Node* n, double u, double v);

} // namespace

double ParamExpr::eval(double u, double v) const { return eval_node(node_.get(), u, v); }

namespace {

double eval_node(const ParamExpr::Node* n, double u, double v) {
    using K = ParamExpr::Node::Kind;
    switch (n->kind) {
        case K::Const: return n->value;
        case K::Param: return n->index == 0 ? u : v;
        case K::Add: return eval_node(n->a.get(), u, v) + eval_node(n->b.get(), u, v);
        case K::Mul: return eval_node(n->a.get(), u, v) * eval_node(n->b.get(), u, v);
        case K::Neg: return -eval_node(n->a.get(), u, v);
        case K::Pow: return std::pow(eval_node(n->a.get(), u, v), n->index);
        case K::Sin: return std::sin(eval_node(n->a.get(), u, v));
        case K::Cos: return std::cos(eval_node(n->a.get(), u, v));
    }
    return 0.0;
}

} // namespace

ParamExpr ParamExpr::derivative(int index) const {
    using K = Node::Kind;
    const Node* n = node_.get();
    switch (n->kind) {
        case K::Const: return constant(0.0);
        case K::Param: return constant(n->index == index ? 1.0 : 0.0);
        case K::Add: return ParamExpr(n->a).derivative(index) + ParamExpr(n->b).derivative(index);
        case K::Mul:
            return ParamExpr(n->a).derivative(index) * ParamExpr(n->b) +
                   ParamExpr(n->a) * ParamExpr(n->b).derivative(index);
        case K::Neg: return -ParamExpr(n->a).derivative(index);
        case K::Pow: {
            if (n->index == 0) return constant(0.0);
            return constant(static_cast<double>(n->index)) * ParamExpr(n->a).pow(n->index - 1) *
                   ParamExpr(n->a).derivative(index);
        }
        case K::Sin: return cos(ParamExpr(n->a)) * ParamExpr(n->a).derivative(index);
        case K::Cos: return -(sin(ParamExpr(n->a)) * ParamExpr(n->a).derivative(index));
    }
    return constant(0.0);
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct PTok {
    enum class Kind { Number, Ident, Sym, End } kind;
    std::string text;
    double number = 0.0;
    int line = 1, col = 1;
};

class PLexer {
  public:
    explicit PLexer(const std::string& text) : text_(text) { advance(); }
    const PTok& peek() const { return tok_; }
    PTok next() {
        PTok t = tok_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) bump();
        tok_ = PTok{PTok::Kind::End, "", 0.0, line_, col_};
        if (pos_ >= text_.size()) return;
        char c = text_[pos_];
        tok_.line = line_;
        tok_.col = col_;
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
                bump();
            tok_.kind = PTok::Kind::Number;
            tok_.text = text_.substr(start, pos_ - start);
            tok_.number = std::stod(tok_.text);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                           text_[pos_] == '_'))
                bump();
            tok_.kind = PTok::Kind::Ident;
            tok_.text = text_.substr(start, pos_ - start);
            return;
        }
        tok_.kind = PTok::Kind::Sym;
        tok_.text = std::string(1, c);
        bump();
    }
    void bump() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }
    std::string text_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    PTok tok_;
};

class PParser {
  public:
    PParser(const std::string& text, const std::array<std::string, 2>& params, int n_params)
        : lex_(text), params_(params), n_params_(n_params) {}

    ParamExpr parse() {
        ParamExpr e = sum();
        const PTok& t = lex_.peek();
        if (t.kind != PTok::Kind::End)
            throw ParseError(ErrorCode::SyntaxError, "unexpected token '" + t.text + "'", t.line,
                             t.col);
        return e;
    }

  private:
    ParamExpr sum() {
        ParamExpr e = product();
        while (true) {
            const PTok& t = lex_.peek();
            if (t.kind == PTok::Kind::Sym && (t.text == "+" || t.text == "-")) {
                bool plus = t.text == "+";
                lex_.next();
                ParamExpr rhs = product();
                e = plus ? e + rhs : e - rhs;
            } else {
                return e;
            }
        }
    }

    ParamExpr product() {
        ParamExpr e = unary();
        while (true) {
            const PTok& t = lex_.peek();
            if (t.kind == PTok::Kind::Sym && (t.text == "*" || t.text == "/")) {
                bool mul = t.text == "*";
                PTok op = lex_.next();
                ParamExpr rhs = unary();
                if (mul) {
                    e = e * rhs;
                } else {
                    double d = rhs.eval(0.1234, 0.5678); // constant check below
                    double d2 = rhs.eval(0.9, 0.1);
                    if (d != d2 || d == 0.0)
                        throw ParseError(ErrorCode::SyntaxError,
                                         "division only by nonzero constants", op.line, op.col);
                    e = e * ParamExpr::constant(1.0 / d);
                }
            } else {
                return e;
            }
        }
    }

    ParamExpr unary() {
        const PTok& t = lex_.peek();
        if (t.kind == PTok::Kind::Sym && t.text == "-") {
            lex_.next();
            return -unary();
        }
        if (t.kind == PTok::Kind::Sym && t.text == "+") {
            lex_.next();
            return unary();
        }
        return power();
    }

    ParamExpr power() {
        ParamExpr base = atom();
        const PTok& t = lex_.peek();
        if (t.kind == PTok::Kind::Sym && t.text == "^") {
            lex_.next();
            PTok e = lex_.next();
            if (e.kind != PTok::Kind::Number || e.number != std::floor(e.number) || e.number < 0)
                throw ParseError(ErrorCode::SyntaxError, "exponent must be a nonnegative integer",
                                 e.line, e.col);
            return base.pow(static_cast<int>(e.number));
        }
        return base;
    }

    ParamExpr atom() {
        PTok t = lex_.next();
        if (t.kind == PTok::Kind::Number) return ParamExpr::constant(t.number);
        if (t.kind == PTok::Kind::Ident) {
            if (t.text == "pi") return ParamExpr::constant(kPi);
            if (t.text == "sin" || t.text == "cos") {
                PTok open = lex_.next();
                if (open.kind != PTok::Kind::Sym || open.text != "(")
                    throw ParseError(ErrorCode::SyntaxError, "expected '(' after " + t.text,
                                     open.line, open.col);
                ParamExpr arg = sum();
                PTok close = lex_.next();
                if (close.kind != PTok::Kind::Sym || close.text != ")")
                    throw ParseError(ErrorCode::SyntaxError, "expected ')'", close.line, close.col);
                return t.text == "sin" ? ParamExpr::sin(arg) : ParamExpr::cos(arg);
            }
            for (int i = 0; i < n_params_; ++i)
                if (t.text == params_[i]) return ParamExpr::parameter(i);
            throw ParseError(ErrorCode::SemanticError, "unknown name '" + t.text + "'", t.line,
                             t.col);
        }
        if (t.kind == PTok::Kind::Sym && t.text == "(") {
            ParamExpr e = sum();
            PTok close = lex_.next();
            if (close.kind != PTok::Kind::Sym || close.text != ")")
                throw ParseError(ErrorCode::SyntaxError, "expected ')'", close.line, close.col);
            return e;
        }
        throw ParseError(ErrorCode::SyntaxError, "unexpected token '" + t.text + "'", t.line, t.col);
    }

    PLexer lex_;
    std::array<std::string, 2> params_;
    int n_params_;
};

} // namespace

ParamExpr parse_param_expr(const std::string& text, const std::array<std::string, 2>& params,
                           int n_params) {
    return PParser(text, params, n_params).parse();
}

// ---------------------------------------------------------------------------
// ParamSurface

ParamSurface::ParamSurface(std::array<ParamExpr, 4> coords, double u_min, double u_max,
                           double v_min, double v_max)
    : coords_(std::move(coords)), u_min_(u_min), u_max_(u_max), v_min_(v_min), v_max_(v_max) {
    for (int i = 0; i < 4; ++i) {
        du_[i] = coords_[i].derivative(0);
        dv_[i] = coords_[i].derivative(1);
    }
}

FloatPoint ParamSurface::at(double u, double v) const {
    return {coords_[0].eval(u, v), coords_[1].eval(u, v), coords_[2].eval(u, v),
            coords_[3].eval(u, v)};
}

std::array<double, 4> ParamSurface::tangent_u(double u, double v) const {
    return {du_[0].eval(u, v), du_[1].eval(u, v), du_[2].eval(u, v), du_[3].eval(u, v)};
}

std::array<double, 4> ParamSurface::tangent_v(double u, double v) const {
    return {dv_[0].eval(u, v), dv_[1].eval(u, v), dv_[2].eval(u, v), dv_[3].eval(u, v)};
}

double ParamSurface::extent(int samples) const {
    std::array<double, 4> lo, hi;
    lo.fill(1e300);
    hi.fill(-1e300);
    for (int i = 0; i <= samples; ++i) {
        for (int j = 0; j <= samples; ++j) {
            double u = u_min_ + (u_max_ - u_min_) * i / samples;
            double v = v_min_ + (v_max_ - v_min_) * j / samples;
            FloatPoint p = at(u, v);
            for (int k = 0; k < 4; ++k) {
                lo[k] = std::min(lo[k], p[k]);
                hi[k] = std::max(hi[k], p[k]);
            }
        }
    }
    double span = 0.0;
    for (int k = 0; k < 4; ++k) span = std::max(span, hi[k] - lo[k]);
    return span;
}

ParamSurface ParamSurface::translated(const FloatPoint& offset) const {
    std::array<ParamExpr, 4> coords;
    for (int i = 0; i < 4; ++i) coords[i] = coords_[i] + ParamExpr::constant(offset[i]);
    return ParamSurface(std::move(coords), u_min_, u_max_, v_min_, v_max_);
}

void ParamSurface::verify_closed(int samples, double rel_eps) const {
    double eps = std::max(rel_eps * extent(samples), 1e-300);
    auto dist = [](const FloatPoint& a, const FloatPoint& b) {
        double d = 0.0;
        for (int k = 0; k < 4; ++k) d = std::max(d, std::abs(a[k] - b[k]));
        return d;
    };
    // u edges: either x(u_min, v) == x(u_max, v) for all v (periodic) or each
    // edge collapses to a point; same for v edges.
    auto check_dir = [&](bool u_dir) {
        bool periodic = true, collapse_lo = true, collapse_hi = true;
        FloatPoint lo0 = u_dir ? at(u_min_, v_min_) : at(u_min_, v_min_);
        FloatPoint hi0 = u_dir ? at(u_max_, v_min_) : at(u_min_, v_max_);
        for (int i = 0; i <= samples; ++i) {
            double s = static_cast<double>(i) / samples;
            FloatPoint a, b;
            if (u_dir) {
                double v = v_min_ + (v_max_ - v_min_) * s;
                a = at(u_min_, v);
                b = at(u_max_, v);
            } else {
                double u = u_min_ + (u_max_ - u_min_) * s;
                a = at(u, v_min_);
                b = at(u, v_max_);
            }
            if (dist(a, b) > eps) periodic = false;
            if (dist(a, lo0) > eps) collapse_lo = false;
            if (dist(b, hi0) > eps) collapse_hi = false;
        }
        if (!periodic && !(collapse_lo && collapse_hi))
            throw Error(ErrorCode::SemanticError,
                        std::string("cycle is not closed along the ") + (u_dir ? "u" : "v") +
                            " direction");
    };
    check_dir(true);
    check_dir(false);
}

ParamSurface ParamSurface::sphere(const FloatPoint& center, double radius,
                                  const std::array<double, 4>& b1, const std::array<double, 4>& b2,
                                  const std::array<double, 4>& b3) {
    ParamExpr th = ParamExpr::parameter(0);
    ParamExpr ph = ParamExpr::parameter(1);
    ParamExpr sin_th = ParamExpr::sin(th), cos_th = ParamExpr::cos(th);
    ParamExpr sin_ph = ParamExpr::sin(ph), cos_ph = ParamExpr::cos(ph);
    std::array<ParamExpr, 4> coords;
    for (int k = 0; k < 4; ++k) {
        coords[k] = ParamExpr::constant(center[k]) +
                    ParamExpr::constant(radius) *
                        (sin_th * cos_ph * ParamExpr::constant(b1[k]) +
                         sin_th * sin_ph * ParamExpr::constant(b2[k]) +
                         cos_th * ParamExpr::constant(b3[k]));
    }
    return ParamSurface(std::move(coords), 0.0, kPi, 0.0, 2.0 * kPi);
}

ParamSurface ParamSurface::from_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::SyntaxError, std::string("cycle JSON: ") + e.what());
    }
    if (!j.contains("coords") || !j["coords"].is_array() || j["coords"].size() != 4)
        throw Error(ErrorCode::SemanticError, "cycle JSON: 'coords' must be 4 expressions");
    std::array<std::string, 2> params{"u", "v"};
    std::array<ParamExpr, 4> coords;
    for (int i = 0; i < 4; ++i)
        coords[i] = parse_param_expr(j["coords"][i].get<std::string>(), params, 2);
    auto bound = [&](const nlohmann::json& b) -> double {
        if (b.is_number()) return b.get<double>();
        return parse_param_expr(b.get<std::string>(), params, 0).eval(0, 0);
    };
    auto range = [&](const char* key) -> std::pair<double, double> {
        if (!j.contains(key) || !j[key].is_array() || j[key].size() != 2)
            throw Error(ErrorCode::SemanticError,
                        std::string("cycle JSON: '") + key + "' must be [lo, hi]");
        return {bound(j[key][0]), bound(j[key][1])};
    };
    auto [ulo, uhi] = range("u");
    auto [vlo, vhi] = range("v");
    return ParamSurface(std::move(coords), ulo, uhi, vlo, vhi);
}

// ---------------------------------------------------------------------------
// ParamCurve

ParamCurve::ParamCurve(std::array<ParamExpr, 4> coords, double t0, double t1)
    : coords_(std::move(coords)), t0_(t0), t1_(t1) {}

FloatPoint ParamCurve::at(double t) const {
    return {coords_[0].eval(t), coords_[1].eval(t), coords_[2].eval(t), coords_[3].eval(t)};
}

ParamCurve ParamCurve::from_exprs(const std::string& comma_separated, double t0, double t1) {
    std::vector<std::string> parts;
    std::string current;
    int depth = 0;
    for (char c : comma_separated) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            parts.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    parts.push_back(current);
    if (parts.size() != 4)
        throw Error(ErrorCode::SemanticError, "path must have exactly 4 coordinate expressions");
    std::array<std::string, 2> params{"t", ""};
    std::array<ParamExpr, 4> coords;
    for (int i = 0; i < 4; ++i) coords[i] = parse_param_expr(parts[i], params, 1);
    return ParamCurve(std::move(coords), t0, t1);
}

} // namespace engel

#include "engel/model.hpp"

#include <cctype>
#include <sstream>

#include "engel/errors.hpp"

namespace engel {

bool ModelFile::operator==(const ModelFile& other) const {
    return var_names == other.var_names && polys == other.polys && fields == other.fields &&
           forms == other.forms && frame_name == other.frame_name &&
           frame_is_coframe == other.frame_is_coframe && frame_entries == other.frame_entries &&
           frame_orientation == other.frame_orientation &&
           complement_entries == other.complement_entries &&
           complement_declared == other.complement_declared && box_declared == other.box_declared &&
           box.lo == other.box.lo && box.hi == other.box.hi &&
           tol_overrides == other.tol_overrides && sign_convention == other.sign_convention;
}

namespace {

// ---------------------------------------------------------------------------
// Lexer

struct Tok {
    enum class Kind { Ident, Number, Sym, End } kind = Kind::End;
    std::string text;
    int line = 1, col = 1;
};

class Lexer {
  public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }
    const Tok& peek() const { return tok_; }
    Tok next() {
        Tok t = tok_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                bump();
            } else if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') bump();
            } else {
                break;
            }
        }
        tok_ = Tok{Tok::Kind::End, "", line_, col_};
        if (pos_ >= text_.size()) return;
        char c = text_[pos_];
        tok_.line = line_;
        tok_.col = col_;
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && pos_ + 1 < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
            size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
                bump();
            tok_.kind = Tok::Kind::Number;
            tok_.text = text_.substr(start, pos_ - start);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                           text_[pos_] == '_'))
                bump();
            tok_.kind = Tok::Kind::Ident;
            tok_.text = text_.substr(start, pos_ - start);
            return;
        }
        tok_.kind = Tok::Kind::Sym;
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
    Tok tok_;
};

Rational rational_from_digits(const std::string& digits, int line, int col) {
    auto dot = digits.find('.');
    if (dot == std::string::npos) return Rational(Int(digits));
    std::string whole = digits.substr(0, dot);
    std::string frac = digits.substr(dot + 1);
    if (frac.find('.') != std::string::npos || (whole.empty() && frac.empty()))
        throw ParseError(ErrorCode::SyntaxError, "malformed number '" + digits + "'", line, col);
    Int num = Int(whole.empty() ? "0" : whole);
    Int den = 1;
    for (char c : frac) {
        num = num * 10 + (c - '0');
        den *= 10;
    }
    return Rational(num, den);
}

// Linear combination of d-symbols (or dx-symbols) with polynomial
// coefficients; pure scalars have no direction part.
struct LinCombo {
    PolyExpr scalar;
    std::array<PolyExpr, 4> dir{};
    bool has_dir = false;
};

enum class ExprContext { Scalar, Field, Form };

// ---------------------------------------------------------------------------
// Parser

class ModelParser {
  public:
    explicit ModelParser(const std::string& text) : lex_(text) {}

    ModelFile parse() {
        while (lex_.peek().kind != Tok::Kind::End) statement();
        if (!seen_var_)
            throw ParseError(ErrorCode::SemanticError, "missing 'var' declaration", 1, 1);
        if (!seen_frame_)
            throw ParseError(ErrorCode::SemanticError, "missing frame or coframe declaration", 1, 1);
        return model_;
    }

  private:
    [[noreturn]] void fail(ErrorCode code, const std::string& msg, const Tok& t) {
        throw ParseError(code, msg, t.line, t.col);
    }

    Tok expect_sym(const std::string& s) {
        Tok t = lex_.next();
        if (t.kind != Tok::Kind::Sym || t.text != s)
            fail(ErrorCode::SyntaxError, "expected '" + s + "', got '" + t.text + "'", t);
        return t;
    }

    Tok expect_ident() {
        Tok t = lex_.next();
        if (t.kind != Tok::Kind::Ident)
            fail(ErrorCode::SyntaxError, "expected identifier, got '" + t.text + "'", t);
        return t;
    }

    bool name_taken(const std::string& n) const {
        if (n == model_.var_names[0] || n == model_.var_names[1] || n == model_.var_names[2] ||
            n == model_.var_names[3])
            return seen_var_;
        for (const auto& [k, v] : model_.polys)
            if (k == n) return true;
        for (const auto& [k, v] : model_.fields)
            if (k == n) return true;
        for (const auto& [k, v] : model_.forms)
            if (k == n) return true;
        return false;
    }

    void statement() {
        Tok head = expect_ident();
        const std::string& kw = head.text;
        if (kw == "var") {
            for (int i = 0; i < 4; ++i) {
                Tok name = expect_ident();
                model_.var_names[static_cast<size_t>(i)] = name.text;
            }
            seen_var_ = true;
        } else if (kw == "poly") {
            Tok name = expect_ident();
            if (name_taken(name.text)) fail(ErrorCode::SemanticError, "duplicate name '" + name.text + "'", name);
            expect_sym("=");
            LinCombo e = expr(ExprContext::Scalar);
            // The name f is reserved for normal-form moduli and must vanish
            // to first order at the origin.
            if (name.text == "f") {
                RatPoint origin{Rational(0), Rational(0), Rational(0), Rational(0)};
                bool ok = e.scalar.evaluate(origin) == 0;
                for (int axis = 1; axis <= 4 && ok; ++axis)
                    ok = e.scalar.differentiate(axis).evaluate(origin) == 0;
                if (!ok)
                    fail(ErrorCode::SemanticError,
                         "modulus f must satisfy f(0) = 0 and df(0) = 0", name);
            }
            model_.polys.emplace_back(name.text, std::move(e.scalar));
        } else if (kw == "field") {
            Tok name = expect_ident();
            if (name_taken(name.text)) fail(ErrorCode::SemanticError, "duplicate name '" + name.text + "'", name);
            expect_sym("=");
            LinCombo e = expr(ExprContext::Field);
            VectorField v;
            for (int i = 0; i < 4; ++i) v[i] = e.dir[static_cast<size_t>(i)];
            if (!e.scalar.is_zero())
                fail(ErrorCode::SemanticError, "field expression has a scalar part", name);
            model_.fields.emplace_back(name.text, std::move(v));
        } else if (kw == "form") {
            Tok name = expect_ident();
            if (name_taken(name.text)) fail(ErrorCode::SemanticError, "duplicate name '" + name.text + "'", name);
            expect_sym("=");
            LinCombo e = expr(ExprContext::Form);
            OneForm w;
            for (int i = 0; i < 4; ++i) w[i] = e.dir[static_cast<size_t>(i)];
            if (!e.scalar.is_zero())
                fail(ErrorCode::SemanticError, "form expression has a scalar part", name);
            model_.forms.emplace_back(name.text, std::move(w));
        } else if (kw == "frame" || kw == "coframe") {
            if (seen_frame_) fail(ErrorCode::SemanticError, "frame declared twice", head);
            seen_frame_ = true;
            model_.frame_is_coframe = kw == "coframe";
            Tok name = expect_ident();
            model_.frame_name = name.text;
            expect_sym("=");
            expect_sym("(");
            Tok e1 = expect_ident();
            expect_sym(",");
            Tok e2 = expect_ident();
            expect_sym(")");
            for (const Tok* t : {&e1, &e2}) {
                bool found = false;
                if (model_.frame_is_coframe) {
                    for (const auto& [k, v] : model_.forms)
                        if (k == t->text) found = true;
                } else {
                    for (const auto& [k, v] : model_.fields)
                        if (k == t->text) found = true;
                }
                if (!found)
                    fail(ErrorCode::SemanticError,
                         std::string("unknown ") + (model_.frame_is_coframe ? "form" : "field") +
                             " '" + t->text + "'",
                         *t);
            }
            model_.frame_entries = {e1.text, e2.text};
            if (lex_.peek().kind == Tok::Kind::Ident && lex_.peek().text == "oriented") lex_.next();
            model_.frame_orientation = +1;
        } else if (kw == "complement") {
            expect_sym("=");
            expect_sym("(");
            Tok e1 = expect_ident();
            expect_sym(",");
            Tok e2 = expect_ident();
            expect_sym(")");
            for (const Tok* t : {&e1, &e2}) {
                if (coordinate_axis(t->text) > 0) continue;
                bool found = false;
                for (const auto& [k, v] : model_.fields)
                    if (k == t->text) found = true;
                if (!found)
                    fail(ErrorCode::SemanticError, "unknown complement entry '" + t->text + "'", *t);
            }
            model_.complement_entries = {e1.text, e2.text};
            model_.complement_declared = true;
        } else if (kw == "box") {
            expect_sym("=");
            expect_sym("[");
            double lo = number_token();
            expect_sym(",");
            double hi = number_token();
            expect_sym("]");
            expect_sym("^");
            Tok four = lex_.next();
            if (four.text != "4") fail(ErrorCode::SyntaxError, "expected '4' after '^'", four);
            if (!(lo < hi)) fail(ErrorCode::SemanticError, "box must satisfy lo < hi", four);
            for (int k = 0; k < 4; ++k) {
                model_.box.lo[static_cast<size_t>(k)] = lo;
                model_.box.hi[static_cast<size_t>(k)] = hi;
            }
            model_.box_declared = true;
        } else if (kw == "tol") {
            Tok name = expect_ident();
            expect_sym("=");
            double value = number_token();
            model_.tol_overrides[name.text] = value;
        } else if (kw == "sign_convention") {
            expect_sym("=");
            double value = number_token();
            if (value != 1.0 && value != -1.0)
                fail(ErrorCode::SemanticError, "sign_convention must be +1 or -1", head);
            model_.sign_convention = value > 0 ? +1 : -1;
        } else {
            fail(ErrorCode::SyntaxError, "unknown statement '" + kw + "'", head);
        }
        expect_sym(";");
    }

    double number_token() {
        bool neg = false;
        while (lex_.peek().kind == Tok::Kind::Sym &&
               (lex_.peek().text == "-" || lex_.peek().text == "+")) {
            if (lex_.next().text == "-") neg = !neg;
        }
        Tok t = lex_.next();
        if (t.kind != Tok::Kind::Number)
            fail(ErrorCode::SyntaxError, "expected number, got '" + t.text + "'", t);
        std::string text = t.text;
        // Scientific notation for tolerances: 1e-10.
        if (lex_.peek().kind == Tok::Kind::Ident && lex_.peek().text[0] == 'e') {
            std::string suffix = lex_.next().text;
            text += suffix;
            if (suffix == "e") {
                if (lex_.peek().kind == Tok::Kind::Sym &&
                    (lex_.peek().text == "-" || lex_.peek().text == "+"))
                    text += lex_.next().text;
                Tok exp = lex_.next();
                if (exp.kind != Tok::Kind::Number)
                    fail(ErrorCode::SyntaxError, "malformed exponent", exp);
                text += exp.text;
            }
        }
        try {
            double v = std::stod(text);
            return neg ? -v : v;
        } catch (const std::exception&) {
            fail(ErrorCode::SyntaxError, "malformed number '" + text + "'", t);
        }
    }

    // d1..d4 / dx1..dx4 -> axis; 0 when not a coordinate symbol.
    static int coordinate_axis(const std::string& name) {
        if (name.size() == 2 && name[0] == 'd' && name[1] >= '1' && name[1] <= '4')
            return name[1] - '0';
        return 0;
    }
    static int coordinate_form_axis(const std::string& name) {
        if (name.size() == 3 && name[0] == 'd' && name[1] == 'x' && name[2] >= '1' && name[2] <= '4')
            return name[2] - '0';
        return 0;
    }

    LinCombo expr(ExprContext ctx) { return sum(ctx); }

    LinCombo sum(ExprContext ctx) {
        LinCombo e = product(ctx);
        while (lex_.peek().kind == Tok::Kind::Sym &&
               (lex_.peek().text == "+" || lex_.peek().text == "-")) {
            bool plus = lex_.next().text == "+";
            LinCombo rhs = product(ctx);
            if (plus) {
                e.scalar += rhs.scalar;
                for (int i = 0; i < 4; ++i) e.dir[static_cast<size_t>(i)] += rhs.dir[static_cast<size_t>(i)];
            } else {
                e.scalar -= rhs.scalar;
                for (int i = 0; i < 4; ++i) e.dir[static_cast<size_t>(i)] -= rhs.dir[static_cast<size_t>(i)];
            }
            e.has_dir = e.has_dir || rhs.has_dir;
        }
        return e;
    }

    LinCombo product(ExprContext ctx) {
        LinCombo e = unary(ctx);
        while (lex_.peek().kind == Tok::Kind::Sym &&
               (lex_.peek().text == "*" || lex_.peek().text == "/")) {
            Tok op = lex_.next();
            LinCombo rhs = unary(ctx);
            if (op.text == "*") {
                if (e.has_dir && rhs.has_dir)
                    fail(ErrorCode::SemanticError, "expressions are linear in the basis symbols", op);
                if (rhs.has_dir) std::swap(e, rhs);
                // e may have a direction part, rhs is scalar.
                e.scalar = e.scalar * rhs.scalar;
                for (int i = 0; i < 4; ++i)
                    e.dir[static_cast<size_t>(i)] = e.dir[static_cast<size_t>(i)] * rhs.scalar;
            } else {
                if (rhs.has_dir)
                    fail(ErrorCode::SemanticError, "cannot divide by a basis expression", op);
                const auto& terms = rhs.scalar.terms();
                if (terms.size() != 1 || terms.begin()->first != Mono{0, 0, 0, 0})
                    fail(ErrorCode::SemanticError, "division only by nonzero constants", op);
                Rational inv = 1 / terms.begin()->second;
                e.scalar = e.scalar * inv;
                for (int i = 0; i < 4; ++i)
                    e.dir[static_cast<size_t>(i)] = e.dir[static_cast<size_t>(i)] * inv;
            }
        }
        return e;
    }

    LinCombo unary(ExprContext ctx) {
        if (lex_.peek().kind == Tok::Kind::Sym && lex_.peek().text == "-") {
            lex_.next();
            LinCombo e = unary(ctx);
            e.scalar = -e.scalar;
            for (int i = 0; i < 4; ++i) e.dir[static_cast<size_t>(i)] = -e.dir[static_cast<size_t>(i)];
            return e;
        }
        if (lex_.peek().kind == Tok::Kind::Sym && lex_.peek().text == "+") {
            lex_.next();
            return unary(ctx);
        }
        return power(ctx);
    }

    LinCombo power(ExprContext ctx) {
        LinCombo base = atom(ctx);
        if (lex_.peek().kind == Tok::Kind::Sym && lex_.peek().text == "^") {
            Tok op = lex_.next();
            if (base.has_dir)
                fail(ErrorCode::SemanticError, "cannot exponentiate a basis expression", op);
            Tok e = lex_.next();
            if (e.kind != Tok::Kind::Number || e.text.find('.') != std::string::npos)
                fail(ErrorCode::SyntaxError, "exponent must be a nonnegative integer", e);
            base.scalar = base.scalar.pow(std::stoi(e.text));
        }
        return base;
    }

    LinCombo atom(ExprContext ctx) {
        Tok t = lex_.next();
        if (t.kind == Tok::Kind::Number) {
            LinCombo e;
            e.scalar = PolyExpr(rational_from_digits(t.text, t.line, t.col));
            return e;
        }
        if (t.kind == Tok::Kind::Sym && t.text == "(") {
            LinCombo e = sum(ctx);
            expect_sym(")");
            return e;
        }
        if (t.kind != Tok::Kind::Ident)
            fail(ErrorCode::SyntaxError, "unexpected token '" + t.text + "'", t);

        // Chart variables.
        for (int k = 0; k < 4; ++k) {
            if (t.text == model_.var_names[static_cast<size_t>(k)]) {
                LinCombo e;
                e.scalar = PolyExpr::variable(k + 1);
                return e;
            }
        }
        // Named polynomials.
        for (const auto& [name, p] : model_.polys) {
            if (name == t.text) {
                LinCombo e;
                e.scalar = p;
                return e;
            }
        }
        // Basis symbols, context dependent.
        if (ctx == ExprContext::Field) {
            if (int axis = coordinate_axis(t.text); axis > 0) {
                LinCombo e;
                e.has_dir = true;
                e.dir[static_cast<size_t>(axis - 1)] = PolyExpr(Rational(1));
                return e;
            }
            if (t.text.size() >= 2 && t.text[0] == 'd' && t.text.find('x') == std::string::npos &&
                std::isdigit(static_cast<unsigned char>(t.text[1])))
                fail(ErrorCode::SemanticError, "unknown axis '" + t.text + "'", t);
        }
        if (ctx == ExprContext::Form) {
            if (int axis = coordinate_form_axis(t.text); axis > 0) {
                LinCombo e;
                e.has_dir = true;
                e.dir[static_cast<size_t>(axis - 1)] = PolyExpr(Rational(1));
                return e;
            }
            if (t.text.size() >= 3 && t.text[0] == 'd' && t.text[1] == 'x')
                fail(ErrorCode::SemanticError, "unknown axis '" + t.text + "'", t);
        }
        fail(ErrorCode::SemanticError, "unknown name '" + t.text + "'", t);
    }

    Lexer lex_;
    ModelFile model_;
    bool seen_var_ = false;
    bool seen_frame_ = false;
};

std::string walk_terms_to_dsl(const PolyExpr& p, const std::array<std::string, 4>& names) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
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
        int degree = m[0] + m[1] + m[2] + m[3];
        bool coeff_shown = degree == 0 || coeff != 1;
        if (coeff_shown) os << rational_to_string(coeff);
        bool need_star = coeff_shown;
        for (int k = 0; k < 4; ++k) {
            if (m[k] == 0) continue;
            if (need_star) os << "*";
            os << names[static_cast<size_t>(k)];
            if (m[k] > 1) os << "^" << m[k];
            need_star = true;
        }
    }
    return os.str();
}

std::string combo_to_dsl(const std::array<const PolyExpr*, 4>& comps, const char* prefix,
                         const std::array<std::string, 4>& names) {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < 4; ++i) {
        const PolyExpr& c = *comps[static_cast<size_t>(i)];
        if (c.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        const auto& terms = c.terms();
        bool is_one = terms.size() == 1 && terms.begin()->first == Mono{0, 0, 0, 0} &&
                      terms.begin()->second == 1;
        if (!is_one) os << "(" << walk_terms_to_dsl(c, names) << ")*";
        os << prefix << (i + 1);
    }
    if (first) os << "0*" << prefix << "1";
    return os.str();
}

} // namespace

std::string poly_to_dsl(const PolyExpr& p, const std::array<std::string, 4>& names) {
    return walk_terms_to_dsl(p, names);
}

std::string field_to_dsl(const VectorField& v, const std::array<std::string, 4>& names) {
    return combo_to_dsl({&v[0], &v[1], &v[2], &v[3]}, "d", names);
}

std::string form_to_dsl(const OneForm& w, const std::array<std::string, 4>& names) {
    return combo_to_dsl({&w[0], &w[1], &w[2], &w[3]}, "dx", names);
}

ModelFile parse_model(const std::string& text) { return ModelParser(text).parse(); }

std::string serialize_model(const ModelFile& m) {
    std::ostringstream os;
    os << "var " << m.var_names[0] << " " << m.var_names[1] << " " << m.var_names[2] << " "
       << m.var_names[3] << ";\n";
    for (const auto& [name, p] : m.polys)
        os << "poly " << name << " = " << poly_to_dsl(p, m.var_names) << ";\n";
    for (const auto& [name, w] : m.forms)
        os << "form " << name << " = " << form_to_dsl(w, m.var_names) << ";\n";
    for (const auto& [name, v] : m.fields)
        os << "field " << name << " = " << field_to_dsl(v, m.var_names) << ";\n";
    os << (m.frame_is_coframe ? "coframe " : "frame ") << m.frame_name << " = ("
       << m.frame_entries[0] << ", " << m.frame_entries[1] << ") oriented;\n";
    if (m.complement_declared)
        os << "complement = (" << m.complement_entries[0] << ", " << m.complement_entries[1]
           << ");\n";
    if (m.box_declared) {
        std::ostringstream lo, hi;
        lo.precision(17);
        hi.precision(17);
        lo << m.box.lo[0];
        hi << m.box.hi[0];
        os << "box = [" << lo.str() << ", " << hi.str() << "]^4;\n";
    }
    for (const auto& [name, value] : m.tol_overrides) {
        std::ostringstream v;
        v.precision(17);
        v << value;
        os << "tol " << name << " = " << v.str() << ";\n";
    }
    if (m.sign_convention != +1) os << "sign_convention = -1;\n";
    return os.str();
}

ResolvedModel resolve_model(const ModelFile& m) {
    ResolvedModel out;
    out.ast = m;

    auto find_field = [&](const std::string& name) -> const VectorField* {
        for (const auto& [k, v] : m.fields)
            if (k == name) return &v;
        return nullptr;
    };
    auto find_form = [&](const std::string& name) -> const OneForm* {
        for (const auto& [k, v] : m.forms)
            if (k == name) return &v;
        return nullptr;
    };

    if (m.frame_is_coframe) {
        const OneForm* w1 = find_form(m.frame_entries[0]);
        const OneForm* w2 = find_form(m.frame_entries[1]);
        if (!w1 || !w2) throw Error(ErrorCode::SemanticError, "coframe entries not found");
        out.coframe = Coframe2(*w1, *w2, m.frame_orientation);
        out.frame = coframe_to_frame(*out.coframe);
    } else {
        const VectorField* x1 = find_field(m.frame_entries[0]);
        const VectorField* x2 = find_field(m.frame_entries[1]);
        if (!x1 || !x2) throw Error(ErrorCode::SemanticError, "frame entries not found");
        out.frame = Frame2(*x1, *x2, m.frame_orientation);
    }

    std::array<VectorField, 2> comp_fields;
    for (int i = 0; i < 2; ++i) {
        const std::string& name = m.complement_entries[static_cast<size_t>(i)];
        if (name.size() == 2 && name[0] == 'd' && name[1] >= '1' && name[1] <= '4') {
            comp_fields[static_cast<size_t>(i)] = VectorField::coordinate(name[1] - '0');
        } else if (const VectorField* f = find_field(name)) {
            comp_fields[static_cast<size_t>(i)] = *f;
        } else {
            throw Error(ErrorCode::SemanticError, "unknown complement entry '" + name + "'");
        }
    }
    out.complement = Frame2(comp_fields[0], comp_fields[1]);
    out.box = m.box;

    Tolerances tol;
    tol.sign_convention = m.sign_convention;
    for (const auto& [name, value] : m.tol_overrides) {
        if (name == "refine_tol")
            tol.refine_tol = value;
        else if (name == "rank_rel_tol")
            tol.rank_rel_tol = value;
        else if (name == "classify_tol")
            tol.classify_tol = value;
        else if (name == "den_margin")
            tol.den_margin = value;
        else if (name == "seed_scale")
            tol.seed_scale = value;
        else if (name == "c_sv_ratio")
            tol.c_sv_ratio = value;
        else if (name == "transversality_tol")
            tol.transversality_tol = value;
        else if (name == "depth_cap")
            tol.depth_cap = static_cast<int>(value);
        else if (name == "newton_max_iter")
            tol.newton_max_iter = static_cast<int>(value);
        else if (name == "degree_cap")
            set_degree_cap(static_cast<int>(value));
        else
            throw Error(ErrorCode::SemanticError, "unknown tolerance '" + name + "'");
    }
    out.tol = tol;

    validate_frame_on_box(out.frame, out.box);
    return out;
}

} // namespace engel

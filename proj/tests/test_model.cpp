#include <doctest.h>

#include "engel/errors.hpp"
#include "engel/model.hpp"
#include "test_helpers.hpp"

using namespace engel;
using namespace engel::testing;

namespace {

const char* kCFormModel = R"(
# C-form chart model
var x1 x2 x3 x4;
poly f = x4^2;
field X1 = d3;
field X2 = d4 - x3^2*d1 - x3*(x1+f)*d2;
frame D = (X1, X2) oriented;
complement = (d1, d2);
box = [-1, 1]^4;
)";

} // namespace

TEST_CASE("parse_model: C-form fields match the catalog") {
    ModelFile m = parse_model(kCFormModel);
    ResolvedModel r = resolve_model(m);
    CatalogEntry entry = catalog_get("C-form");
    CHECK(r.frame.x1() == entry.frame.x1());
    CHECK(r.frame.x2() == entry.frame.x2());
    CHECK(r.box.lo[0] == -1.0);
    CHECK(r.box.hi[3] == 1.0);
}

TEST_CASE("parse_model: engel canonical field expression") {
    ModelFile m = parse_model(
        "var x1 x2 x3 x4;\n"
        "field X = d1 + x4*d2 + x2*d3;\n"
        "field W = d4;\n"
        "frame D = (X, W) oriented;\n");
    ResolvedModel r = resolve_model(m);
    CatalogEntry entry = catalog_get("engel-canonical");
    CHECK(r.frame.x1() == entry.frame.x1());
    CHECK(r.frame.x2() == entry.frame.x2());
    // Default complement is (d1, d2).
    CHECK(r.complement.x1() == VectorField::coordinate(1));
}

TEST_CASE("parse_model: unknown axis is a semantic error with location") {
    try {
        parse_model("var x1 x2 x3 x4;\nfield Y = d5;\nframe D = (Y, Y) oriented;\n");
        FAIL("expected SemanticError");
    } catch (const ParseError& e) {
        CHECK(e.code() == ErrorCode::SemanticError);
        CHECK(e.line() == 2);
        CHECK(e.col() > 0);
    }
}

TEST_CASE("parse_model: syntax errors carry positions") {
    try {
        parse_model("var x1 x2 x3 x4;\npoly p = (x1 + ;\n");
        FAIL("expected SyntaxError");
    } catch (const ParseError& e) {
        CHECK(e.code() == ErrorCode::SyntaxError);
        CHECK(e.line() == 2);
    }
}

TEST_CASE("parse_model: semantic checks") {
    // Duplicate name.
    CHECK_THROWS_AS(parse_model("var x1 x2 x3 x4;\npoly p = x1;\npoly p = x2;\n"
                                "field X = d1;\nframe D = (X, X);\n"),
                    ParseError);
    // Unknown name in an expression.
    CHECK_THROWS_AS(parse_model("var x1 x2 x3 x4;\npoly p = q + 1;\nfield X = d1;\n"
                                "frame D = (X, X);\n"),
                    ParseError);
    // Reserved modulus name must vanish to first order.
    CHECK_THROWS_AS(parse_model("var x1 x2 x3 x4;\npoly f = x1;\nfield X = d1;\n"
                                "frame D = (X, X);\n"),
                    ParseError);
    CHECK_NOTHROW(parse_model("var x1 x2 x3 x4;\npoly f = x1*x3;\nfield X = d1;\nfield W = d2;\n"
                              "frame D = (X, W);\n"));
    // Nonlinear use of the basis symbols.
    CHECK_THROWS_AS(parse_model("var x1 x2 x3 x4;\nfield X = d1*d2;\nframe D = (X, X);\n"),
                    ParseError);
    // Missing frame.
    CHECK_THROWS_AS(parse_model("var x1 x2 x3 x4;\npoly p = x1;\n"), ParseError);
}

TEST_CASE("resolve_model: dependent frame fields are rejected") {
    ModelFile m = parse_model(
        "var x1 x2 x3 x4;\n"
        "field X = x1*d1;\n" // vanishes on the x1 = 0 slice
        "field W = d2;\n"
        "frame D = (X, W) oriented;\n");
    CHECK_THROWS_AS(resolve_model(m), Error);
}

TEST_CASE("resolve_model: tolerance overrides and sign convention") {
    ModelFile m = parse_model(
        "var x1 x2 x3 x4;\n"
        "field X = d1 + x4*d2 + x2*d3;\n"
        "field W = d4;\n"
        "frame D = (X, W) oriented;\n"
        "tol refine_tol = 1e-12;\n"
        "tol rank_rel_tol = 1e-8;\n"
        "sign_convention = -1;\n");
    ResolvedModel r = resolve_model(m);
    CHECK(r.tol.refine_tol == 1e-12);
    CHECK(r.tol.rank_rel_tol == 1e-8);
    CHECK(r.tol.sign_convention == -1);

    ModelFile bad = parse_model(
        "var x1 x2 x3 x4;\nfield X = d1;\nfield W = d2;\nframe D = (X, W);\n"
        "tol bogus = 1;\n");
    CHECK_THROWS_AS(resolve_model(bad), Error);
}

TEST_CASE("parser round-trip: serialize(parse(text)) reparses identically") {
    std::vector<std::string> sources = {kCFormModel};
    for (const auto& name : catalog_names())
        sources.push_back(catalog_to_model_text(catalog_get(name)));
    for (const auto& text : sources) {
        ModelFile m1 = parse_model(text);
        ModelFile m2 = parse_model(serialize_model(m1));
        CHECK(m1 == m2);
    }
}

TEST_CASE("coframe models resolve through the kernel solve") {
    ModelFile m = parse_model(
        "var x1 x2 x3 x4;\n"
        "form w1 = dx1 + x3^2*dx4;\n"
        "form w2 = dx2 + x3*(x1 + x4^2)*dx4;\n"
        "coframe D = (w1, w2) oriented;\n"
        "complement = (d1, d2);\n");
    ResolvedModel r = resolve_model(m);
    CatalogEntry entry = catalog_get("C-form");
    CHECK(r.frame.x1() == entry.frame.x1());
    CHECK(r.frame.x2() == entry.frame.x2());
}

TEST_CASE("rational and decimal literals are exact") {
    ModelFile m = parse_model(
        "var x1 x2 x3 x4;\n"
        "poly p = 1/3*x1 + 0.25*x2;\n"
        "field X = d1;\nfield W = d2;\nframe D = (X, W);\n");
    const PolyExpr& p = m.polys[0].second;
    PolyExpr expected = x(1) * Rational(1, 3) + x(2) * Rational(1, 4);
    CHECK(p == expected);
}

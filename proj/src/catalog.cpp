#include "engel/catalog.hpp"

#include <memory>

#include "engel/errors.hpp"
#include "engel/model.hpp"

namespace engel {

namespace {

PolyExpr var(int axis) { return PolyExpr::variable(axis); }
PolyExpr c(long v) { return PolyExpr(Rational(v)); }
PolyExpr zero() { return PolyExpr(); }

GrowthVector gv(std::initializer_list<int> dims, bool stalled = false) {
    GrowthVector g;
    g.dims = dims;
    g.stalled = stalled;
    return g;
}

Rational rand_nonzero(Rng& rng, int max_abs_num = 6, int max_den = 4) {
    for (;;) {
        Rational r = rand_rational(rng, max_abs_num, max_den);
        if (r != 0) return r;
    }
}

void validate_modulus(const PolyExpr& f) {
    RatPoint origin{Rational(0), Rational(0), Rational(0), Rational(0)};
    if (f.evaluate(origin) != 0)
        throw Error(ErrorCode::BadModulus, "modulus must satisfy f(0) = 0");
    for (int axis = 1; axis <= 4; ++axis)
        if (f.differentiate(axis).evaluate(origin) != 0)
            throw Error(ErrorCode::BadModulus, "modulus must satisfy df(0) = 0");
}

CatalogEntry make_engel_canonical() {
    CatalogEntry e;
    e.name = "engel-canonical";
    e.description = "maximal growth frame X = d1 + x4 d2 + x2 d3, W = d4";
    VectorField x(c(1), var(4), var(2), zero());
    VectorField w(zero(), zero(), zero(), c(1));
    e.frame = Frame2(x, w);
    e.complement = Frame2(VectorField::coordinate(2), VectorField::coordinate(3));
    e.expected_growth.push_back(
        {"everywhere", gv({2, 3, 4}), [](Rng& rng) { return rand_rat_point(rng); }});
    return e;
}

CatalogEntry make_c_form(const std::optional<PolyExpr>& modulus) {
    PolyExpr f = modulus.value_or(var(4) * var(4));
    validate_modulus(f);
    CatalogEntry e;
    e.name = "C-form";
    e.description = "frame X1 = d3, X2 = d4 - x3^2 d1 - x3(x1+f) d2 near the locus intersection";
    e.parametric = true;
    e.modulus = f;
    VectorField x1(zero(), zero(), c(1), zero());
    VectorField x2(-(var(3) * var(3)), -(var(3) * (var(1) + f)), zero(), c(1));
    e.frame = Frame2(x1, x2);
    // Solved coframe consistent with the kernel frame above.
    OneForm w1(c(1), zero(), zero(), var(3) * var(3));
    OneForm w2(zero(), c(1), zero(), var(3) * (var(1) + f));
    e.coframe = Coframe2(w1, w2);
    e.complement = Frame2(VectorField::coordinate(1), VectorField::coordinate(2));

    const PolyExpr sigma1_a = var(3);          // x3
    const PolyExpr sigma1_b = var(1) + f;      // x1 + f
    e.expected_loci.push_back({"S1", {sigma1_a, sigma1_b}});

    const bool default_modulus = f == var(4) * var(4);
    if (default_modulus) {
        e.expected_loci.push_back({"S2", {c(2) * var(4) + var(3) * var(3), sigma1_b}});
        e.expected_loci.push_back({"C", {var(1), var(3), var(4)}});

        e.expected_growth.push_back({"off-locus", gv({2, 3, 4}), [](Rng& rng) {
                                         for (;;) {
                                             RatPoint p = rand_rat_point(rng);
                                             Rational s1 = p[0] + p[3] * p[3];
                                             Rational s2 = 2 * p[3] + p[2] * p[2];
                                             if (s1 != 0) return p;
                                             if (p[2] != 0 && s2 != 0) return p;
                                         }
                                     }});
        e.expected_growth.push_back({"S1 minus C", gv({2, 2, 4}), [](Rng& rng) {
                                         Rational x4 = rand_nonzero(rng);
                                         RatPoint p;
                                         p[0] = -x4 * x4;
                                         p[1] = rand_rational(rng);
                                         p[2] = 0;
                                         p[3] = x4;
                                         return p;
                                     }});
        e.expected_growth.push_back({"S2 minus C", gv({2, 3, 3, 4}), [](Rng& rng) {
                                         Rational x3 = rand_nonzero(rng);
                                         Rational x4 = -x3 * x3 / 2;
                                         RatPoint p;
                                         p[0] = -x4 * x4;
                                         p[1] = rand_rational(rng);
                                         p[2] = x3;
                                         p[3] = x4;
                                         return p;
                                     }});
        e.expected_growth.push_back({"C", gv({2, 2, 3, 4}), [](Rng& rng) {
                                         RatPoint p{Rational(0), rand_rational(rng), Rational(0),
                                                    Rational(0)};
                                         return p;
                                     }});
    } else {
        // For a custom modulus only the generic stratum is predicted; points
        // are rejected until the flag witnesses full growth.
        auto flag = std::make_shared<BracketFlag>(e.frame, 3);
        e.expected_growth.push_back({"off-locus", gv({2, 3, 4}), [flag](Rng& rng) {
                                         const GrowthVector target{{2, 3, 4}, false};
                                         for (;;) {
                                             RatPoint p = rand_rat_point(rng);
                                             if (growth_vector_at(*flag, p) == target) return p;
                                         }
                                     }});
    }
    return e;
}

CatalogEntry make_printed_coframe(const std::string& name, const std::string& description,
                                  OneForm w1, OneForm w2) {
    CatalogEntry e;
    e.name = name;
    e.description = description;
    e.coframe = Coframe2(std::move(w1), std::move(w2));
    e.frame = coframe_to_frame(*e.coframe);
    e.complement = Frame2(VectorField::coordinate(1), VectorField::coordinate(3));
    // Neither form carries a dx2 term, so d2 lies in the kernel and brackets
    // with it vanish: the kernel distribution is integrable as written.
    e.expected_growth.push_back(
        {"everywhere", gv({2, 2}, true), [](Rng& rng) { return rand_rat_point(rng); }});
    return e;
}

CatalogEntry make_integrable() {
    CatalogEntry e;
    e.name = "integrable";
    e.description = "coordinate plane field d1, d2; growth stalls at rank 2";
    e.frame = Frame2(VectorField::coordinate(1), VectorField::coordinate(2));
    e.complement = Frame2(VectorField::coordinate(3), VectorField::coordinate(4));
    e.expected_growth.push_back(
        {"everywhere", gv({2, 2}, true), [](Rng& rng) { return rand_rat_point(rng); }});
    return e;
}

} // namespace

bool growth_matches(const GrowthVector& computed, const GrowthVector& expected) {
    if (expected.stalled) return computed.stalled && computed.stable_rank() == expected.stable_rank();
    return !computed.stalled && computed.dims == expected.dims;
}

std::vector<std::string> catalog_names() {
    return {"engel-canonical", "C-form", "Z2A", "Z2B", "Z1-as-printed", "integrable"};
}

CatalogEntry catalog_get(const std::string& name, const std::optional<PolyExpr>& modulus) {
    if (modulus && name != "C-form")
        throw Error(ErrorCode::BadModulus, "entry '" + name + "' takes no modulus");
    if (name == "engel-canonical") return make_engel_canonical();
    if (name == "C-form") return make_c_form(modulus);
    if (name == "Z2A")
        return make_printed_coframe(
            "Z2A", "second-degeneracy coframe variant w1 = dx1 + x3 dx4, w2 = dx3 + (x3^2+x3x4)/3 dx4",
            OneForm(c(1), zero(), zero(), var(3)),
            OneForm(zero(), zero(), c(1), (var(3) * var(3) + var(3) * var(4)) * Rational(1, 3)));
    if (name == "Z2B")
        return make_printed_coframe(
            "Z2B", "second-degeneracy coframe variant w1 = dx1 + x3 dx4, w2 = dx3 + x3^2 x4 dx4",
            OneForm(c(1), zero(), zero(), var(3)),
            OneForm(zero(), zero(), c(1), var(3) * var(3) * var(4)));
    if (name == "Z1-as-printed")
        return make_printed_coframe(
            "Z1-as-printed",
            "first-degeneracy coframe variant w1 = dx1 + x3^2 dx4, w2 = dx3 + x3 x4 dx4",
            OneForm(c(1), zero(), zero(), var(3) * var(3)),
            OneForm(zero(), zero(), c(1), var(3) * var(4)));
    if (name == "integrable") return make_integrable();
    throw Error(ErrorCode::UnknownEntry, "no catalog entry named '" + name + "'");
}

std::string catalog_to_model_text(const CatalogEntry& entry) {
    ModelFile m;
    if (entry.modulus) m.polys.emplace_back("f", *entry.modulus);
    if (entry.coframe) {
        m.frame_is_coframe = true;
        m.forms.emplace_back("w1", entry.coframe->w1());
        m.forms.emplace_back("w2", entry.coframe->w2());
        m.frame_entries = {"w1", "w2"};
    } else {
        m.fields.emplace_back("X1", entry.frame.x1());
        m.fields.emplace_back("X2", entry.frame.x2());
        m.frame_entries = {"X1", "X2"};
    }
    auto axis_name = [](const VectorField& v) -> std::string {
        for (int a = 0; a < 4; ++a) {
            if (v[a] == PolyExpr(Rational(1))) {
                bool pure = true;
                for (int b = 0; b < 4; ++b)
                    if (b != a && !v[b].is_zero()) pure = false;
                if (pure) return "d" + std::to_string(a + 1);
            }
        }
        return "";
    };
    std::string c1 = axis_name(entry.complement.x1());
    std::string c2 = axis_name(entry.complement.x2());
    if (c1.empty() || c2.empty())
        throw Error(ErrorCode::SemanticError, "catalog complement is not a coordinate pair");
    m.complement_entries = {c1, c2};
    m.complement_declared = true;
    m.box = entry.box;
    m.box_declared = true;
    return serialize_model(m);
}

} // namespace engel

// Python bindings for the chart analyzer: model loading, growth vectors,
// obstruction sections, locus extraction, pairings, class formulas and
// parallelizing frames.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "engel/catalog.hpp"
#include "engel/charclasses.hpp"
#include "engel/errors.hpp"
#include "engel/flags.hpp"
#include "engel/framebuilder.hpp"
#include "engel/loci.hpp"
#include "engel/model.hpp"

namespace py = pybind11;
using namespace engel;

namespace {

RatPoint to_rat(const std::vector<std::string>& coords) {
    if (coords.size() != 4) throw Error(ErrorCode::InvalidArgument, "point needs 4 coordinates");
    return {rational_from_string(coords[0]), rational_from_string(coords[1]),
            rational_from_string(coords[2]), rational_from_string(coords[3])};
}

RatPoint to_rat(const std::vector<double>& coords) {
    if (coords.size() != 4) throw Error(ErrorCode::InvalidArgument, "point needs 4 coordinates");
    return {Rational(coords[0]), Rational(coords[1]), Rational(coords[2]), Rational(coords[3])};
}

FloatPoint to_float(const std::vector<double>& coords) {
    if (coords.size() != 4) throw Error(ErrorCode::InvalidArgument, "point needs 4 coordinates");
    return {coords[0], coords[1], coords[2], coords[3]};
}

struct PyModel {
    ResolvedModel resolved;

    py::dict growth(const std::vector<double>& at, bool exact, int depth) const {
        BracketFlag flag(resolved.frame, depth, resolved.tol);
        GrowthVector g;
        bool engel;
        if (exact) {
            RatPoint p = to_rat(at);
            g = growth_vector_at(flag, p);
            engel = is_engel_at(resolved.frame, p, resolved.tol);
        } else {
            FloatPoint p = to_float(at);
            g = growth_vector_at(flag, p, resolved.tol.rank_rel_tol);
            engel = is_engel_at(resolved.frame, p, resolved.tol);
        }
        py::dict out;
        out["growth_vector"] = g.dims;
        out["stalled"] = g.stalled;
        out["engel"] = engel;
        return out;
    }

    bool is_engel(const std::vector<double>& at) const {
        return is_engel_at(resolved.frame, to_float(at), resolved.tol);
    }

    std::pair<double, double> engel_line(const std::vector<double>& at) const {
        auto [a, b] = engel_line_at(resolved.frame, to_rat(at), resolved.tol);
        return {to_double(a), to_double(b)};
    }

    py::dict nilpotent(const std::vector<double>& at) const {
        NilpotentizationData d = nilpotentization_at(resolved.frame, to_rat(at), resolved.tol);
        py::dict out;
        out["alpha"] = rational_to_string(d.alpha);
        out["beta"] = rational_to_string(d.beta);
        out["normalized"] = std::pair<std::string, std::string>{
            rational_to_string(d.normalized_alpha), rational_to_string(d.normalized_beta)};
        out["e4_axis"] = d.e4_axis;
        return out;
    }

    SectionRep section(const std::string& which) const {
        if (which == "d1") return delta1(resolved.frame, resolved.complement);
        if (which == "d2") return delta2(resolved.frame, resolved.complement);
        throw Error(ErrorCode::InvalidArgument, "section must be 'd1' or 'd2'");
    }

    py::list extract(const std::string& which, int grid, double refine_tol) const {
        SectionRep s = section(which);
        double tol = refine_tol > 0 ? refine_tol : resolved.tol.refine_tol;
        LocusResult res = extract_locus(s, resolved.box, grid, tol, resolved.tol);
        py::list out;
        for (const auto& sample : res.samples) {
            py::dict d;
            d["point"] = std::vector<double>(sample.point.begin(), sample.point.end());
            d["locus"] = locus_tag_name(sample.locus);
            d["sign"] = sample.coorientation;
            d["residual"] = sample.residual;
            out.append(d);
        }
        return out;
    }

    py::dict link_check(const std::vector<double>& at, double radius, int grid) const {
        LinkReport r = link_consistency_at(section("d2"), to_float(at), radius, grid, resolved.tol);
        py::dict out;
        out["sum"] = r.sum;
        out["signs"] = r.signs;
        py::list pts;
        for (const auto& p : r.points) pts.append(std::vector<double>(p.begin(), p.end()));
        out["points"] = pts;
        py::list tags;
        for (auto t : r.tags) tags.append(std::string(locus_tag_name(t)));
        out["tags"] = tags;
        return out;
    }

    py::dict pair_cycle(const std::string& which, const std::string& cycle_json, int grid) const {
        PairingReport r =
            intersect_cycle_report(section(which), ParamSurface::from_json(cycle_json), grid,
                                   resolved.tol);
        py::dict out;
        out["pairing"] = r.total;
        py::list crossings;
        for (const auto& c : r.crossings) {
            py::dict d;
            d["u"] = c.u;
            d["v"] = c.v;
            d["point"] = std::vector<double>(c.point.begin(), c.point.end());
            d["sign"] = c.sign;
            crossings.append(d);
        }
        out["crossings"] = crossings;
        return out;
    }

    py::dict reversal(const std::string& which, const std::string& locus,
                      const std::string& path_exprs, double t0, double t1, int samples) const {
        LocusTag tag;
        if (locus == "s1")
            tag = LocusTag::Sigma1;
        else if (locus == "s2")
            tag = LocusTag::Sigma2;
        else
            throw Error(ErrorCode::InvalidArgument, "locus must be 's1' or 's2'");
        ReversalReport r = reversal_check(section(which), tag,
                                          ParamCurve::from_exprs(path_exprs, t0, t1), samples,
                                          resolved.tol);
        py::dict out;
        out["sign_start"] = r.sign_start;
        out["sign_end"] = r.sign_end;
        out["flipped"] = r.flipped;
        out["expected_flip"] = r.expected_flip;
        out["consistent"] = r.consistent;
        return out;
    }

    py::list frame_at(const std::vector<double>& at, int chart_orientation) const {
        FlagAtPoint flag =
            canonical_flag_at(resolved.frame, chart_orientation, to_float(at), resolved.tol);
        auto E = parallelization_frame_at(flag);
        py::list out;
        for (const auto& e : E) out.append(std::vector<double>(e.begin(), e.end()));
        return out;
    }
};

PyModel model_from_text(const std::string& text) {
    return PyModel{resolve_model(parse_model(text))};
}

PyModel model_from_catalog(const std::string& name, const std::string& f_expr) {
    std::optional<PolyExpr> modulus;
    if (!f_expr.empty()) {
        ModelFile m = parse_model("var x1 x2 x3 x4;\npoly f = " + f_expr +
                                  ";\nfield X = d1;\nfield W = d2;\nframe D = (X, W);\n");
        modulus = m.polys.front().second;
    }
    CatalogEntry entry = catalog_get(name, modulus);
    ResolvedModel r;
    r.frame = entry.frame;
    r.coframe = entry.coframe;
    r.complement = entry.complement;
    r.box = entry.box;
    return PyModel{std::move(r)};
}

} // namespace

PYBIND11_MODULE(engelpy, m) {
    m.doc() = "Rank-2 plane-field degeneration analysis on 4-dimensional charts";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    py::class_<SectionRep>(m, "Section")
        .def_property_readonly("kind",
                               [](const SectionRep& s) {
                                   return s.kind == SectionKind::Delta1 ? "d1" : "d2";
                               })
        .def_property_readonly("numerators",
                               [](const SectionRep& s) {
                                   return std::pair<std::string, std::string>{s.num1.to_string(),
                                                                              s.num2.to_string()};
                               })
        .def_property_readonly("denominator",
                               [](const SectionRep& s) { return s.den.to_string(); })
        .def("value_at",
             [](const SectionRep& s, const std::vector<double>& at) {
                 FloatPoint p = to_float(at);
                 auto n = s.numerators_at(p);
                 return std::pair<double, double>{n[0], n[1]};
             })
        .def("jacobian_rank", [](const SectionRep& s, const std::vector<double>& at) {
            return transversality_at(s, to_float(at)).rank;
        });

    py::class_<PyModel>(m, "Model")
        .def(py::init(&model_from_text), py::arg("text"))
        .def("growth", &PyModel::growth, py::arg("at"), py::arg("exact") = true,
             py::arg("depth") = 4)
        .def("is_engel", &PyModel::is_engel, py::arg("at"))
        .def("engel_line", &PyModel::engel_line, py::arg("at"))
        .def("nilpotent", &PyModel::nilpotent, py::arg("at"))
        .def("section", &PyModel::section, py::arg("which"))
        .def("extract", &PyModel::extract, py::arg("which") = "d2", py::arg("grid") = 9,
             py::arg("refine_tol") = -1.0)
        .def("link_check", &PyModel::link_check, py::arg("at"), py::arg("radius") = 0.3,
             py::arg("grid") = 48)
        .def("pair_cycle", &PyModel::pair_cycle, py::arg("which"), py::arg("cycle_json"),
             py::arg("grid") = 48)
        .def("reversal", &PyModel::reversal, py::arg("which"), py::arg("locus"),
             py::arg("path_exprs"), py::arg("t0") = -0.5, py::arg("t1") = 0.5,
             py::arg("samples") = 41)
        .def("frame_at", &PyModel::frame_at, py::arg("at"), py::arg("chart_orientation") = 1);

    m.def("catalog", &model_from_catalog, py::arg("name"), py::arg("f") = "",
          "Load a built-in chart model");
    m.def("catalog_names", &catalog_names);
    m.def("catalog_model_text", [](const std::string& name, const std::string& f_expr) {
        std::optional<PolyExpr> modulus;
        if (!f_expr.empty()) {
            ModelFile mf = parse_model("var x1 x2 x3 x4;\npoly f = " + f_expr +
                                       ";\nfield X = d1;\nfield W = d2;\nframe D = (X, W);\n");
            modulus = mf.polys.front().second;
        }
        return catalog_to_model_text(catalog_get(name, modulus));
    }, py::arg("name"), py::arg("f") = "");

    m.def("theorem_classes",
          [](const std::string& ring_json, const std::string& w1D, const std::string& w2D,
             const std::string& w1Q, const std::string& w2Q) {
              RingPtr ring = Z2RingPresentation::from_json(ring_json);
              auto out = theorem2_classes(
                  Z2RingElement::parse(ring, w1D), Z2RingElement::parse(ring, w2D),
                  Z2RingElement::parse(ring, w1Q), Z2RingElement::parse(ring, w2Q));
              py::dict d;
              d["sigma1"] = out.sigma1.to_string();
              d["sigma2"] = out.sigma2.to_string();
              d["union"] = out.union_class.to_string();
              d["intersection"] = out.intersection.to_string();
              return d;
          },
          py::arg("ring_json"), py::arg("w1D"), py::arg("w2D"), py::arg("w1Q"), py::arg("w2Q"),
          "Mod-2 degeneration classes from Stiefel-Whitney data");

    m.def("admits_oriented_plane_field",
          [](long long euler, long long signature) {
              return existence_criterion({euler, signature});
          },
          py::arg("euler"), py::arg("signature"));
}

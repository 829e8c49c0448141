// Command-line surface: growth vectors, locus extraction, co-orientation
// checks, cycle pairings, Z2 class formulas and frame construction for
// rank-2 plane fields on a single 4-dimensional chart.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "engel/catalog.hpp"
#include "engel/charclasses.hpp"
#include "engel/errors.hpp"
#include "engel/flags.hpp"
#include "engel/framebuilder.hpp"
#include "engel/loci.hpp"
#include "engel/model.hpp"

using nlohmann::json;
using namespace engel;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
    out << content;
}

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> parts;
    std::string current;
    for (char c : text) {
        if (c == ',') {
            parts.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    parts.push_back(current);
    return parts;
}

Rational parse_rational_text(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw Error(ErrorCode::InvalidArgument, "empty coordinate");
    bool neg = false;
    size_t i = 0;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        i = 1;
    }
    std::string body = s.substr(i);
    Rational value;
    if (auto slash = body.find('/'); slash != std::string::npos) {
        value = Rational(Int(body.substr(0, slash)), Int(body.substr(slash + 1)));
    } else if (auto dot = body.find('.'); dot != std::string::npos) {
        Int num = body.substr(0, dot).empty() ? Int(0) : Int(body.substr(0, dot));
        Int den = 1;
        for (char c : body.substr(dot + 1)) {
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw Error(ErrorCode::InvalidArgument, "bad coordinate '" + raw + "'");
            num = num * 10 + (c - '0');
            den *= 10;
        }
        value = Rational(num, den);
    } else {
        value = Rational(Int(body));
    }
    return neg ? -value : value;
}

RatPoint parse_rat_point(const std::string& text) {
    auto parts = split_csv(text);
    if (parts.size() != 4)
        throw Error(ErrorCode::InvalidArgument, "point must have 4 comma-separated coordinates");
    return {parse_rational_text(parts[0]), parse_rational_text(parts[1]),
            parse_rational_text(parts[2]), parse_rational_text(parts[3])};
}

FloatPoint parse_float_point(const std::string& text) {
    return to_float_point(parse_rat_point(text));
}

PolyExpr parse_poly_arg(const std::string& expr) {
    // Route the expression through the model parser so the modulus
    // constraints (f(0) = 0, df(0) = 0) are enforced uniformly.
    ModelFile m = parse_model("var x1 x2 x3 x4;\npoly f = " + expr +
                              ";\nfield X = d1;\nfield W = d2;\nframe D = (X, W);\n");
    return m.polys.front().second;
}

struct LoadedModel {
    ResolvedModel resolved;
    std::string source; // "catalog:NAME" or a path
};

LoadedModel load_model(const std::string& model_arg, const std::string& f_arg) {
    LoadedModel out;
    out.source = model_arg;
    if (model_arg.rfind("catalog:", 0) == 0) {
        std::string name = model_arg.substr(8);
        std::optional<PolyExpr> modulus;
        if (!f_arg.empty()) modulus = parse_poly_arg(f_arg);
        CatalogEntry entry = catalog_get(name, modulus);
        ResolvedModel r;
        r.frame = entry.frame;
        r.coframe = entry.coframe;
        r.complement = entry.complement;
        r.box = entry.box;
        out.resolved = std::move(r);
        return out;
    }
    if (!f_arg.empty())
        throw Error(ErrorCode::InvalidArgument, "--f applies only to catalog models");
    out.resolved = resolve_model(parse_model(read_file(model_arg)));
    return out;
}

json point_json(const FloatPoint& p) { return json::array({p[0], p[1], p[2], p[3]}); }

json rat_point_json(const RatPoint& p) {
    return json::array({rational_to_string(p[0]), rational_to_string(p[1]),
                        rational_to_string(p[2]), rational_to_string(p[3])});
}

SectionRep build_section(const ResolvedModel& model, const std::string& which) {
    if (which == "d1") return delta1(model.frame, model.complement);
    if (which == "d2") return delta2(model.frame, model.complement);
    throw Error(ErrorCode::InvalidArgument, "--section must be d1 or d2");
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rank-2 plane-field degeneration analyzer on 4-dimensional charts"};
    app.require_subcommand(1);

    std::string model_arg, f_arg, at_arg, section_arg{"d2"}, out_arg, obj_arg, cycle_arg,
        path_arg, locus_arg, ring_arg, w1d_arg, w2d_arg, w1q_arg, w2q_arg, name_arg, metric_arg,
        box_arg, obj_axes_arg{"1,2,3"};
    bool exact = false, list_flag = false;
    int grid = 9, samples = 41, depth = 4, chart_orientation = 1;
    double radius = 0.3, t0 = -0.5, t1 = 0.5;
    long long euler = 0, signature = 0;
    double refine_tol_opt = -1.0;

    auto add_model = [&](CLI::App* cmd) {
        cmd->add_option("--model", model_arg,
                        "model file path or catalog:NAME (see 'engel catalog --list')")
            ->required();
        cmd->add_option("--f", f_arg, "modulus polynomial for parametric catalog entries");
    };
    auto apply_tol_overrides = [&](ResolvedModel& m) {
        if (refine_tol_opt > 0) m.tol.refine_tol = refine_tol_opt;
    };
    auto apply_box_override = [&](ResolvedModel& m) {
        if (box_arg.empty()) return;
        auto parts = split_csv(box_arg);
        if (parts.size() != 2) throw Error(ErrorCode::InvalidArgument, "--box expects 'lo,hi'");
        double lo = std::stod(parts[0]), hi = std::stod(parts[1]);
        if (!(lo < hi)) throw Error(ErrorCode::InvalidArgument, "--box expects lo < hi");
        for (int k = 0; k < 4; ++k) {
            m.box.lo[k] = lo;
            m.box.hi[k] = hi;
        }
    };

    // growth
    auto* growth_cmd = app.add_subcommand("growth", "pointwise growth vector and Engel test");
    add_model(growth_cmd);
    growth_cmd->add_option("--at", at_arg, "chart point, comma separated")->required();
    growth_cmd->add_flag("--exact", exact, "exact rational arithmetic (point must be rational)");
    growth_cmd->add_option("--depth", depth, "flag depth (default 4)");
    growth_cmd->callback([&] {
        LoadedModel m = load_model(model_arg, f_arg);
        BracketFlag flag(m.resolved.frame, depth, m.resolved.tol);
        json j;
        GrowthVector g;
        bool engel;
        if (exact) {
            RatPoint p = parse_rat_point(at_arg);
            g = growth_vector_at(flag, p);
            engel = is_engel_at(m.resolved.frame, p, m.resolved.tol);
            j["point"] = rat_point_json(p);
        } else {
            FloatPoint p = parse_float_point(at_arg);
            g = growth_vector_at(flag, p, m.resolved.tol.rank_rel_tol);
            engel = is_engel_at(m.resolved.frame, p, m.resolved.tol);
            j["point"] = point_json(p);
        }
        j["growth_vector"] = g.dims;
        j["stalled"] = g.stalled;
        j["engel"] = engel;
        emit(j);
    });

    // locus
    auto* locus_cmd = app.add_subcommand("locus", "extract a degeneration locus to CSV/OBJ");
    add_model(locus_cmd);
    locus_cmd->add_option("--section", section_arg, "d1 or d2 (default d2)");
    locus_cmd->add_option("--grid", grid, "grid points per axis (default 9)");
    locus_cmd->add_option("--refine-tol", refine_tol_opt, "Gauss-Newton residual target");
    locus_cmd->add_option("--box", box_arg, "uniform box override 'lo,hi'");
    locus_cmd->add_option("--out", out_arg, "CSV output path")->required();
    locus_cmd->add_option("--obj", obj_arg, "optional OBJ point-cloud output path");
    locus_cmd->add_option("--obj-axes", obj_axes_arg, "three axes for OBJ export (default 1,2,3)");
    locus_cmd->callback([&] {
        LoadedModel m = load_model(model_arg, f_arg);
        apply_tol_overrides(m.resolved);
        apply_box_override(m.resolved);
        SectionRep s = build_section(m.resolved, section_arg);
        LocusResult res =
            extract_locus(s, m.resolved.box, grid, m.resolved.tol.refine_tol, m.resolved.tol);
        write_file(out_arg, locus_samples_to_csv(res.samples));
        json j;
        j["samples"] = res.samples.size();
        json by;
        by["S1"] = 0;
        by["S2"] = 0;
        by["C"] = 0;
        for (const auto& sample : res.samples)
            by[locus_tag_name(sample.locus)] = by[locus_tag_name(sample.locus)].get<int>() + 1;
        j["by_locus"] = by;
        j["grid_points"] = res.stats.grid_points;
        j["seeds"] = res.stats.seeds;
        j["newton_diverged"] = res.stats.newton_diverged;
        j["merged_duplicates"] = res.stats.merged_duplicates;
        j["csv"] = out_arg;
        if (!obj_arg.empty()) {
            auto axes = split_csv(obj_axes_arg);
            if (axes.size() != 3) throw Error(ErrorCode::InvalidArgument, "--obj-axes expects 3 axes");
            std::array<int, 3> a{std::stoi(axes[0]), std::stoi(axes[1]), std::stoi(axes[2])};
            write_file(obj_arg, locus_samples_to_obj(res.samples, a));
            j["obj"] = obj_arg;
        }
        emit(j);
    });

    // reversal
    auto* rev_cmd = app.add_subcommand("reversal", "co-orientation reversal along a path across C");
    add_model(rev_cmd);
    rev_cmd->add_option("--section", section_arg, "d1 or d2 (default d2)");
    rev_cmd->add_option("--locus", locus_arg, "s1 or s2: the stratum the path lies on")->required();
    rev_cmd->add_option("--path", path_arg, "4 comma-separated coordinate expressions in t")
        ->required();
    rev_cmd->add_option("--t0", t0, "path start parameter (default -0.5)");
    rev_cmd->add_option("--t1", t1, "path end parameter (default 0.5)");
    rev_cmd->add_option("--samples", samples, "sample count along the path (default 41)");
    rev_cmd->callback([&] {
        LoadedModel m = load_model(model_arg, f_arg);
        SectionRep s = build_section(m.resolved, section_arg);
        LocusTag tag;
        if (locus_arg == "s1")
            tag = LocusTag::Sigma1;
        else if (locus_arg == "s2")
            tag = LocusTag::Sigma2;
        else
            throw Error(ErrorCode::InvalidArgument, "--locus must be s1 or s2");
        ParamCurve path = ParamCurve::from_exprs(path_arg, t0, t1);
        ReversalReport r = reversal_check(s, tag, path, samples, m.resolved.tol);
        json j;
        j["section"] = section_arg;
        j["locus"] = locus_arg;
        j["sign_start"] = r.sign_start;
        j["sign_end"] = r.sign_end;
        j["flipped"] = r.flipped;
        j["expected_flip"] = r.expected_flip;
        j["consistent"] = r.consistent;
        j["transverse_samples"] = r.transverse_samples;
        j["nontransverse_samples"] = r.nontransverse_samples;
        emit(j);
    });

    // link
    auto* link_cmd = app.add_subcommand("link", "link consistency of Sigma around a point of C");
    add_model(link_cmd);
    link_cmd->add_option("--at", at_arg, "point of C")->required();
    link_cmd->add_option("--radius", radius, "sphere radius (default 0.3)");
    link_cmd->add_option("--grid", grid, "parameter grid (default 48)")->default_val(48);
    link_cmd->callback([&] {
        LoadedModel m = load_model(model_arg, f_arg);
        SectionRep s = delta2(m.resolved.frame, m.resolved.complement);
        LinkReport r =
            link_consistency_at(s, parse_float_point(at_arg), radius, grid, m.resolved.tol);
        json j;
        j["center"] = point_json(r.center);
        j["radius"] = r.radius;
        json pts = json::array(), signs = json::array(), tags = json::array();
        for (size_t i = 0; i < r.points.size(); ++i) {
            pts.push_back(point_json(r.points[i]));
            signs.push_back(r.signs[i]);
            tags.push_back(locus_tag_name(r.tags[i]));
        }
        j["points"] = pts;
        j["signs"] = signs;
        j["tags"] = tags;
        j["sum"] = r.sum;
        emit(j);
    });

    // pair
    auto* pair_cmd = app.add_subcommand("pair", "signed intersection count with a 2-cycle");
    add_model(pair_cmd);
    pair_cmd->add_option("--section", section_arg, "d1 or d2 (default d2)");
    pair_cmd->add_option("--cycle", cycle_arg, "cycle definition JSON file")->required();
    pair_cmd->add_option("--grid", grid, "parameter grid (default 48)")->default_val(48);
    pair_cmd->callback([&] {
        LoadedModel m = load_model(model_arg, f_arg);
        SectionRep s = build_section(m.resolved, section_arg);
        ParamSurface cyc = ParamSurface::from_json(read_file(cycle_arg));
        PairingReport r = intersect_cycle_report(s, cyc, grid, m.resolved.tol);
        json j;
        j["pairing"] = r.total;
        json crossings = json::array();
        for (const auto& c : r.crossings) {
            json cj;
            cj["u"] = c.u;
            cj["v"] = c.v;
            cj["point"] = point_json(c.point);
            cj["sign"] = c.sign;
            crossings.push_back(cj);
        }
        j["crossings"] = crossings;
        j["jitter_retries"] = r.jitter_retries;
        emit(j);
    });

    // classes
    auto* classes_cmd = app.add_subcommand("classes", "mod-2 degeneration classes from w-data");
    classes_cmd->add_option("--ring", ring_arg, "ring presentation JSON file")->required();
    classes_cmd->add_option("--w1D", w1d_arg, "degree-1 class, sum of basis labels")->required();
    classes_cmd->add_option("--w2D", w2d_arg, "degree-2 class")->required();
    classes_cmd->add_option("--w1Q", w1q_arg, "degree-1 class")->required();
    classes_cmd->add_option("--w2Q", w2q_arg, "degree-2 class")->required();
    classes_cmd->callback([&] {
        RingPtr ring = Z2RingPresentation::from_json(read_file(ring_arg));
        auto out = theorem2_classes(
            Z2RingElement::parse(ring, w1d_arg), Z2RingElement::parse(ring, w2d_arg),
            Z2RingElement::parse(ring, w1q_arg), Z2RingElement::parse(ring, w2q_arg));
        json j;
        j["sigma1"] = out.sigma1.to_string();
        j["sigma2"] = out.sigma2.to_string();
        j["union"] = out.union_class.to_string();
        j["intersection"] = out.intersection.to_string();
        emit(j);
    });

    // exists
    auto* exists_cmd =
        app.add_subcommand("exists", "oriented 2-plane-field existence from (euler, signature)");
    exists_cmd->add_option("--euler", euler, "Euler characteristic")->required();
    exists_cmd->add_option("--signature", signature, "signature")->required();
    exists_cmd->callback([&] {
        json j;
        j["euler"] = euler;
        j["signature"] = signature;
        j["admits_oriented_plane_field"] = existence_criterion({euler, signature});
        emit(j);
    });

    // frame
    auto* frame_cmd = app.add_subcommand("frame", "canonical flag and parallelizing frame");
    add_model(frame_cmd);
    frame_cmd->add_option("--at", at_arg, "Engel point");
    frame_cmd->add_option("--grid", grid, "export frames over an NxNxNxN box grid")->default_val(0);
    frame_cmd->add_option("--chart-orientation", chart_orientation, "+1 or -1 (default +1)");
    frame_cmd->add_option("--metric", metric_arg, "constant metric: 4 (diagonal) or 16 numbers");
    frame_cmd->callback([&] {
        LoadedModel m = load_model(model_arg, f_arg);
        Metric4 metric = identity_metric();
        if (!metric_arg.empty()) {
            auto parts = split_csv(metric_arg);
            if (parts.size() == 4) {
                for (int i = 0; i < 4; ++i) metric[i][i] = std::stod(parts[i]);
            } else if (parts.size() == 16) {
                for (int i = 0; i < 4; ++i)
                    for (int k = 0; k < 4; ++k) metric[i][k] = std::stod(parts[4 * i + k]);
            } else {
                throw Error(ErrorCode::InvalidArgument, "--metric expects 4 or 16 numbers");
            }
        }
        auto frame_json = [&](const FloatPoint& p) {
            FlagAtPoint flag = canonical_flag_at(m.resolved.frame, chart_orientation, p,
                                                 m.resolved.tol);
            auto E = parallelization_frame_at(flag, metric);
            json j;
            j["point"] = point_json(p);
            j["L_dir"] = json::array({flag.L_dir[0], flag.L_dir[1], flag.L_dir[2], flag.L_dir[3]});
            j["e4_axis"] = flag.e4_axis;
            json frame = json::array();
            for (const auto& e : E) frame.push_back(json::array({e[0], e[1], e[2], e[3]}));
            j["E"] = frame;
            return j;
        };
        if (grid > 0) {
            json frames = json::array();
            const Box& box = m.resolved.box;
            std::array<int, 4> idx{0, 0, 0, 0};
            while (true) {
                FloatPoint p;
                for (int k = 0; k < 4; ++k)
                    p[k] = box.lo[k] + (box.hi[k] - box.lo[k]) * idx[k] / (grid - 1);
                if (is_engel_at(m.resolved.frame, p, m.resolved.tol)) frames.push_back(frame_json(p));
                int k = 3;
                while (k >= 0 && ++idx[k] == grid) idx[k--] = 0;
                if (k < 0) break;
            }
            json j;
            j["frames"] = frames;
            emit(j);
        } else {
            if (at_arg.empty()) throw Error(ErrorCode::InvalidArgument, "--at or --grid required");
            emit(frame_json(parse_float_point(at_arg)));
        }
    });

    // nilpotent
    auto* nil_cmd = app.add_subcommand("nilpotent", "graded bracket constants at an Engel point");
    add_model(nil_cmd);
    nil_cmd->add_option("--at", at_arg, "rational Engel point")->required();
    nil_cmd->callback([&] {
        LoadedModel m = load_model(model_arg, f_arg);
        NilpotentizationData data =
            nilpotentization_at(m.resolved.frame, parse_rat_point(at_arg), m.resolved.tol);
        json j;
        j["alpha"] = rational_to_string(data.alpha);
        j["beta"] = rational_to_string(data.beta);
        j["normalized"] = json::array({rational_to_string(data.normalized_alpha),
                                       rational_to_string(data.normalized_beta)});
        j["e4_axis"] = data.e4_axis;
        j["engel_direction"] = json::array({rational_to_string(data.engel_direction.first),
                                            rational_to_string(data.engel_direction.second)});
        json labels = json::array();
        for (const auto& l : data.basis_labels) labels.push_back(l);
        j["basis"] = labels;
        emit(j);
    });

    // catalog
    auto* cat_cmd = app.add_subcommand("catalog", "list built-in charts or print one as model DSL");
    cat_cmd->add_flag("--list", list_flag, "list entry names");
    cat_cmd->add_option("--name", name_arg, "entry to print");
    cat_cmd->add_option("--f", f_arg, "modulus for parametric entries");
    cat_cmd->add_option("--out", out_arg, "write the model text to a file");
    cat_cmd->callback([&] {
        if (name_arg.empty()) {
            json j;
            json names = json::array();
            for (const auto& n : catalog_names()) names.push_back(n);
            j["entries"] = names;
            emit(j);
            return;
        }
        std::optional<PolyExpr> modulus;
        if (!f_arg.empty()) modulus = parse_poly_arg(f_arg);
        CatalogEntry entry = catalog_get(name_arg, modulus);
        std::string text = catalog_to_model_text(entry);
        if (!out_arg.empty()) {
            write_file(out_arg, text);
            json j;
            j["written"] = out_arg;
            emit(j);
        } else {
            std::cout << text;
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    } catch (const Error& e) {
        json err;
        err["error"] = error_code_name(e.code());
        err["message"] = e.what();
        std::cerr << err.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        json err;
        err["error"] = "InternalError";
        err["message"] = e.what();
        std::cerr << err.dump() << "\n";
        return 1;
    }
    return 0;
}

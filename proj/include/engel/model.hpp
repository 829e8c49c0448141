#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "engel/config.hpp"
#include "engel/fields.hpp"

namespace engel {

// Parsed model file: one chart, one frame (or coframe), a complement, a box
// and tolerance overrides. Name resolution happens during parsing, so the
// stored polynomials and fields are already concrete.
struct ModelFile {
    std::array<std::string, 4> var_names{"x1", "x2", "x3", "x4"};
    std::vector<std::pair<std::string, PolyExpr>> polys;
    std::vector<std::pair<std::string, VectorField>> fields;
    std::vector<std::pair<std::string, OneForm>> forms;

    std::string frame_name = "D";
    bool frame_is_coframe = false;
    std::array<std::string, 2> frame_entries{};
    int frame_orientation = +1;

    std::array<std::string, 2> complement_entries{"d1", "d2"};
    bool complement_declared = false;

    Box box;
    bool box_declared = false;

    std::map<std::string, double> tol_overrides;
    int sign_convention = +1;

    bool operator==(const ModelFile& other) const;
};

ModelFile parse_model(const std::string& text);
std::string serialize_model(const ModelFile& model);

// Resolved chart data: coframes converted to kernel frames, the complement
// frame built, tolerances merged, and the frame checked for pointwise
// independence on the box.
struct ResolvedModel {
    ModelFile ast;
    Frame2 frame;
    std::optional<Coframe2> coframe;
    Frame2 complement;
    Box box;
    Tolerances tol;
};

ResolvedModel resolve_model(const ModelFile& model);

// DSL text helpers shared with the catalog serializer.
std::string poly_to_dsl(const PolyExpr& p, const std::array<std::string, 4>& names);
std::string field_to_dsl(const VectorField& v, const std::array<std::string, 4>& names);
std::string form_to_dsl(const OneForm& w, const std::array<std::string, 4>& names);

} // namespace engel

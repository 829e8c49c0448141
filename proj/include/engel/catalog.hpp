#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "engel/fields.hpp"
#include "engel/flags.hpp"
#include "engel/randgen.hpp"

namespace engel {

// Region of a catalog chart with its expected pointwise growth vector and a
// sampler producing random rational points of that region.
struct RegionExpectation {
    std::string region;
    GrowthVector growth;
    std::function<RatPoint(Rng&)> sample;
};

// Expected zero-set description: a polynomial system cutting out one locus.
struct LocusExpectation {
    std::string locus; // "S1", "S2", "C"
    std::vector<PolyExpr> equations;
};

struct CatalogEntry {
    std::string name;
    std::string description;
    Frame2 frame;
    std::optional<Coframe2> coframe; // present when the entry is coframe-given
    Frame2 complement;
    Box box;
    bool parametric = false;
    std::optional<PolyExpr> modulus; // the polynomial f in use (parametric entries)
    std::vector<RegionExpectation> expected_growth;
    std::vector<LocusExpectation> expected_loci;
};

// A growth vector matches an expectation when it equals the expected dims,
// or (for stalled expectations) stalls at the same stable rank.
bool growth_matches(const GrowthVector& computed, const GrowthVector& expected);

std::vector<std::string> catalog_names();

// Parametric entries reject a modulus with f(0) != 0 or df(0) != 0.
CatalogEntry catalog_get(const std::string& name,
                         const std::optional<PolyExpr>& modulus = std::nullopt);

// Model-DSL text of an entry (round-trips through parse_model).
std::string catalog_to_model_text(const CatalogEntry& entry);

} // namespace engel

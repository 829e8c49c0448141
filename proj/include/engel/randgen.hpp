#pragma once

#include <random>

#include "engel/fields.hpp"

namespace engel {

// Deterministic generators for property checks; all draws come from the
// caller's engine so a fixed seed reproduces the run.
using Rng = std::mt19937_64;

Rational rand_rational(Rng& rng, int max_abs_num = 4, int max_den = 8);
RatPoint rand_rat_point(Rng& rng, int max_abs_num = 8, int max_den = 8);
PolyExpr rand_poly(Rng& rng, int max_degree = 2, int terms = 3, int max_abs_num = 3, int max_den = 3);
VectorField rand_vector_field(Rng& rng, int max_degree = 2);

} // namespace engel

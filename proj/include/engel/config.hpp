#pragma once

namespace engel {

// Tolerances and caps shared across modules. Defaults are the library-wide
// ones; model files and CLI flags may override a copy per run.
struct Tolerances {
    int depth_cap = 6;              // bracket flag depth limit
    double rank_rel_tol = 1e-9;     // numeric rank: sigma_i > tol * sigma_max
    double refine_tol = 1e-10;      // Gauss-Newton residual target
    int newton_max_iter = 50;
    double newton_damping = 0.5;    // step shrink factor on residual increase
    double seed_scale = 1.0;        // multiplier on the cell-scaled seed bound
    double classify_tol = 1e-6;     // |delta1 numerators| below this => Sigma1 tag
    double c_sv_ratio = 1e-6;       // sigma_min/sigma_max below this => non-transverse (C)
    double den_margin = 1e-9;       // samples with |den| below this are discarded
    double transversality_tol = 1e-8; // NotOnZeroSet residual threshold
    int sign_convention = +1;       // global co-orientation sign from the model file
};

// Polynomial degree cap guarding runaway bracket towers (see symbolic layer).
int degree_cap();
void set_degree_cap(int cap);

} // namespace engel

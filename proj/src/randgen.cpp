#include "engel/randgen.hpp"

namespace engel {

Rational rand_rational(Rng& rng, int max_abs_num, int max_den) {
    std::uniform_int_distribution<int> num(-max_abs_num, max_abs_num);
    std::uniform_int_distribution<int> den(1, max_den);
    return Rational(num(rng), den(rng));
}

RatPoint rand_rat_point(Rng& rng, int max_abs_num, int max_den) {
    return {rand_rational(rng, max_abs_num, max_den), rand_rational(rng, max_abs_num, max_den),
            rand_rational(rng, max_abs_num, max_den), rand_rational(rng, max_abs_num, max_den)};
}

PolyExpr rand_poly(Rng& rng, int max_degree, int terms, int max_abs_num, int max_den) {
    std::uniform_int_distribution<int> deg(0, max_degree);
    PolyExpr out;
    for (int t = 0; t < terms; ++t) {
        Mono m{0, 0, 0, 0};
        int budget = deg(rng);
        std::uniform_int_distribution<int> axis(0, 3);
        for (int i = 0; i < budget; ++i) m[axis(rng)] += 1;
        out += PolyExpr::monomial(rand_rational(rng, max_abs_num, max_den), m);
    }
    return out;
}

VectorField rand_vector_field(Rng& rng, int max_degree) {
    return VectorField(rand_poly(rng, max_degree), rand_poly(rng, max_degree),
                       rand_poly(rng, max_degree), rand_poly(rng, max_degree));
}

} // namespace engel

#include "renorm/random_fields.hpp"

#include "renorm/algebra.hpp"

namespace renorm {

PolyVectorField random_field(std::mt19937_64& rng, const RandomFieldOptions& opts) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<int> num(-opts.max_numerator, opts.max_numerator);
    std::uniform_int_distribution<int> den(1, opts.max_denominator);
    PolyVectorField f(opts.n, opts.trunc);
    for (int k = opts.min_grade; k <= opts.max_grade; ++k) {
        for (const auto& mi : monomial_basis(opts.n, k)) {
            if (coin(rng) > opts.density) continue;
            Rational re(num(rng), den(rng));
            Rational im = opts.gaussian ? Rational(num(rng), den(rng)) : Rational(0);
            f.add_term(mi, Scalar::exact(re, im));
        }
    }
    return f;
}

}  // namespace renorm

#pragma once

#include <random>

#include "renorm/field.hpp"

namespace renorm {

struct RandomFieldOptions {
    int n = 2;
    int min_grade = 1;
    int max_grade = 3;
    int trunc = 5;
    int max_numerator = 9;   // coefficients p/q with |p| <= max_numerator
    int max_denominator = 3; // 1 <= q <= max_denominator
    double density = 0.6;    // probability a basis monomial gets a coefficient
    bool gaussian = false;   // also draw imaginary parts
};

/// Seeded random sparse field with exact rational coefficients.
PolyVectorField random_field(std::mt19937_64& rng, const RandomFieldOptions& opts);

}  // namespace renorm

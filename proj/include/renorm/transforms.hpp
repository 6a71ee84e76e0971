#pragma once

#include "renorm/algebra.hpp"
#include "renorm/field.hpp"
#include "renorm/polymap.hpp"
#include "renorm/rk4.hpp"

namespace renorm {

/// Generator of a Lie-Poincare transformation: a homogeneous polynomial
/// vector field of a single grade m >= 1, with provenance (order k, stage p)
/// of the normalization step that produced it.
class Generator {
public:
    Generator(PolyVectorField h, int order_k, int stage_p);

    const PolyVectorField& field() const { return field_; }
    int grade() const { return grade_; }
    int order() const { return order_k_; }
    int stage() const { return stage_p_; }

private:
    PolyVectorField field_;
    int grade_;
    int order_k_;
    int stage_p_;
};

/// Generators in application order: earlier entries were applied first.
struct GeneratorSequence {
    std::vector<Generator> items;

    bool empty() const { return items.empty(); }
    std::size_t size() const { return items.size(); }
};

/// Transported field after the time-1 flow of h: grade-k output is
/// sum_{s=0}^{[k/m]} (1/s!) {h,.}^s applied to the grade-(k-sm) input.
/// Grades below m are unchanged.
PolyVectorField push_forward(const PolyVectorField& f, const Generator& h, int N);

/// Same transformation computed by the classical substitution route:
/// invert [I + D] as a series and compose with the time-1 flow map of h.
/// Used as an independent cross-check of push_forward; the two must agree
/// exactly on the exact backend.
PolyVectorField push_forward_substitution_oracle(const PolyVectorField& f, const Generator& h,
                                                 int N);

/// Time-1 flow map of h as a polynomial map, truncated at total degree
/// N+1: identity + h + higher corrections.
PolyMap truncated_flow_map(const Generator& h, int N);

/// Raw-field variants: a zero h acts as the identity transformation;
/// otherwise h must be homogeneous of a single grade >= 1.
PolyVectorField push_forward(const PolyVectorField& f, const PolyVectorField& h, int N);
PolyVectorField push_forward_substitution_oracle(const PolyVectorField& f,
                                                 const PolyVectorField& h, int N);
PolyMap truncated_flow_map(const PolyVectorField& h, int N);

enum class MapDirection { forward, inverse };

struct FlowOptions {
    int rk4_steps = 64;  // per generator, over sigma in [0, 1]
};

/// Numerically transport a point through the composed transformation.
/// forward maps new coordinates to original ones (last generator's flow
/// applied first); inverse applies time-(-1) flows in reverse order.
CVec map_point(const GeneratorSequence& seq, const CVec& y, MapDirection direction,
               const FlowOptions& opts = {});

}  // namespace renorm

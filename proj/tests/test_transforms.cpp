#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "renorm/transforms.hpp"
#include "test_util.hpp"

using namespace renorm;
using namespace renorm::testutil;

TEST_CASE("generator invariants") {
    CHECK_THROWS_AS(Generator(field2(2, {{1, 0, 0, 1, 0}}), 1, 0), std::invalid_argument);  // grade 0
    auto mixed = field2(3, {{2, 0, 0, 1, 0}, {2, 1, 0, 1, 0}});
    CHECK_THROWS_AS(Generator(mixed, 1, 0), std::invalid_argument);  // two grades
    Generator ok(field2(2, {{1, 1, 0, 1, 0}}), 1, 0);
    CHECK(ok.grade() == 1);
}

TEST_CASE("push_forward lowest order: fhat_1 = -(m.lambda - lambda_r) c x1x2 e1") {
    Eigenvalues lam{Scalar(1), Scalar(2)};
    auto f = PolyVectorField::linear(lam, 2);
    Scalar c = Scalar::exact(Rational(3, 2));
    Generator h(field2(2, {{1, 1, 0, Rational(3, 2), 0}}), 1, 0);
    auto out = push_forward(f, h, 2);
    // grade 1: -{Ax, h} = -(1 + 2 - 1) * c * x1x2 e1
    CHECK(out.grade_component(0) == f.grade_component(0));
    CHECK(out.grade_component(1) == field2(2, {{1, 1, 0, -3, 0}}));
}

TEST_CASE("push_forward with a commuting generator leaves f unchanged") {
    Eigenvalues lam{Scalar(1), Scalar(2)};
    auto f = PolyVectorField::linear(lam, 4);
    Generator h(field2(4, {{2, 0, 1, 1, 0}}), 1, 0);  // resonant: {Ax, h} = 0
    CHECK(push_forward(f, h, 4) == f.truncated(4));
}

TEST_CASE("push_forward preserves grades below the generator grade") {
    std::mt19937_64 rng(11);
    for (int c = 0; c < 15; ++c) {
        RandomFieldOptions fo;
        fo.max_grade = 5;
        fo.trunc = 5;
        fo.gaussian = true;
        auto f = random_field(rng, fo);
        RandomFieldOptions ho;
        ho.min_grade = ho.max_grade = 2;
        ho.trunc = 5;
        ho.density = 0.9;
        auto hf = random_field(rng, ho);
        if (hf.is_zero()) continue;
        Generator h(hf, 2, 0);
        auto out = push_forward(f, h, 5);
        CHECK(out.truncated(1) == f.truncated(1));
    }
}

TEST_CASE("push_forward is linear in f") {
    std::mt19937_64 rng(12);
    RandomFieldOptions fo;
    fo.max_grade = 4;
    fo.trunc = 4;
    fo.gaussian = true;
    auto f = random_field(rng, fo);
    auto g = random_field(rng, fo);
    Generator h(field2(4, {{2, 0, 0, 1, -2}, {0, 2, 1, 3, 1}}), 1, 0);
    CHECK(push_forward(f + g, h, 4) == push_forward(f, h, 4) + push_forward(g, h, 4));
}

TEST_CASE("substitution oracle: identity and lowest-order prediction") {
    std::mt19937_64 rng(13);
    RandomFieldOptions fo;
    fo.max_grade = 4;
    fo.trunc = 4;
    auto f = random_field(rng, fo);
    // zero generator is the identity substitution
    CHECK(push_forward_substitution_oracle(f, PolyVectorField(2, 4), 4) == f.truncated(4));

    // order-m component equals f_m - L0(h_m) on a linear-plus-noise field
    Eigenvalues lam{Scalar(2), Scalar(-1)};
    auto base = PolyVectorField::linear(lam, 4) + f;
    auto hf = field2(4, {{2, 0, 0, 1, 0}, {1, 1, 1, -2, 0}});
    auto out = push_forward_substitution_oracle(base, hf, 4);
    auto l0h = bracket(PolyVectorField::linear(lam, 4), hf);
    CHECK(out.grade_component(1) == (base.grade_component(1) - l0h).grade_component(1));
}

TEST_CASE("oracle equivalence on randomized inputs") {
    std::mt19937_64 rng(14);
    int done = 0;
    for (int c = 0; c < 60 && done < 50; ++c) {
        RandomFieldOptions fo;
        fo.max_grade = 5;
        fo.trunc = 5;
        fo.gaussian = true;
        fo.density = 0.5;
        auto f = random_field(rng, fo);
        int m = 1 + (c % 3);
        RandomFieldOptions ho;
        ho.min_grade = ho.max_grade = m;
        ho.trunc = 5;
        ho.density = 0.8;
        ho.gaussian = true;
        auto hf = random_field(rng, ho);
        if (hf.is_zero()) continue;
        Generator h(hf, m, 0);
        CHECK(push_forward(f, h, 5) == push_forward_substitution_oracle(f, h, 5));
        ++done;
    }
    CHECK(done == 50);
}

TEST_CASE("truncated flow map basics") {
    // zero field: identity map
    PolyMap id = truncated_flow_map(PolyVectorField(2, 3), 3);
    CHECK(id.comp[0] == ScalarPoly::variable(2, 0, 4));
    CHECK(id.comp[1] == ScalarPoly::variable(2, 1, 4));

    // degree-(m+1) term of the map equals h itself
    auto hf = field2(5, {{2, 0, 0, 1, 0}, {1, 1, 1, -3, 0}});  // grade 1
    PolyMap s = truncated_flow_map(hf, 5);
    CHECK(s.comp[0].coefficient({2, 0}) == Scalar(1));
    CHECK(s.comp[1].coefficient({1, 1}) == Scalar(-3));

    // flow of -h composed with flow of h is the identity up to the cap
    PolyMap sm = truncated_flow_map(-hf, 5);
    for (int i = 0; i < 2; ++i) {
        ScalarPoly comp = s.comp[i].compose(sm.comp);
        CHECK(comp == ScalarPoly::variable(2, i, 6).truncated(comp.degree_cap()));
    }
}

TEST_CASE("map_point: empty sequence and numeric round trip") {
    GeneratorSequence seq;
    CVec y{{0.05, 0.01}, {-0.03, 0.02}};
    CHECK(map_point(seq, y, MapDirection::forward) == y);

    seq.items.emplace_back(field2(5, {{2, 0, 0, 1, 0}, {0, 2, 1, Rational(1, 2), 0}}), 1, 0);
    seq.items.emplace_back(field2(5, {{1, 2, 0, -1, 0}}), 3, 1);
    CVec fwd = map_point(seq, y, MapDirection::forward);
    CVec back = map_point(seq, fwd, MapDirection::inverse);
    for (int i = 0; i < 2; ++i) CHECK(std::abs(back[i] - y[i]) < 1e-9);
}

TEST_CASE("map_point single generator matches the truncated flow map") {
    auto hf = field2(7, {{2, 0, 0, Rational(1, 3), 0}, {1, 1, 1, Rational(-1, 2), 0}});
    Generator h(hf, 1, 0);
    GeneratorSequence seq{{h}};
    PolyMap s = truncated_flow_map(h, 7);

    // flow-consistency scaling: halving |y| scales the gap by >= 2^{N+2-eps};
    // scales stay large enough that the gap sits above the double noise floor
    double prev = -1.0;
    for (int i = 0; i < 3; ++i) {
        double scale = 0.2 * std::ldexp(1.0, -i);
        CVec y{{scale, 0.3 * scale}, {-0.7 * scale, 0.2 * scale}};
        CVec a = map_point(seq, y, MapDirection::forward, FlowOptions{512});
        CVec b = s.evaluate(y);
        double gap = std::max(std::abs(a[0] - b[0]), std::abs(a[1] - b[1]));
        if (prev > 0) CHECK(std::log2(prev / gap) >= 7.0 + 2.0 - 0.5);
        prev = gap;
    }
}

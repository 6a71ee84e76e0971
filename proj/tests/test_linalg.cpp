#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "renorm/linalg.hpp"

using namespace renorm;

namespace {
ScalarMatrix from_ints(int rows, int cols, std::initializer_list<int> vals) {
    ScalarMatrix m(rows, cols);
    auto it = vals.begin();
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = Scalar(*it++);
    return m;
}
}  // namespace

TEST_CASE("rank and rref") {
    auto m = from_ints(3, 3, {1, 2, 3, 2, 4, 6, 1, 0, 1});
    CHECK(rank(m) == 2);
    CHECK(rank(ScalarMatrix::identity(4)) == 4);
    CHECK(rank(ScalarMatrix(3, 2)) == 0);
}

TEST_CASE("nullspace vectors satisfy A v = 0") {
    auto m = from_ints(2, 4, {1, 2, 0, 1, 0, 0, 1, 3});
    auto ns = nullspace(m);
    CHECK(ns.cols() == 2);
    for (int j = 0; j < ns.cols(); ++j) {
        auto v = ns.column(j);
        for (const auto& e : m.apply(v)) CHECK(e.is_zero());
    }
    // full-rank square matrix has empty nullspace
    CHECK(nullspace(ScalarMatrix::identity(3)).cols() == 0);
}

TEST_CASE("solve_pivot: consistent, inconsistent, free variables zeroed") {
    auto m = from_ints(2, 2, {1, 1, 0, 1});
    auto x = solve_pivot(m, {Scalar(3), Scalar(2)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == Scalar(1));
    CHECK((*x)[1] == Scalar(2));

    auto sing = from_ints(2, 2, {1, 1, 1, 1});
    CHECK(!solve_pivot(sing, {Scalar(0), Scalar(1)}).has_value());

    // underdetermined: free variable gets zero
    auto wide = from_ints(1, 3, {1, 2, 3});
    auto y = solve_pivot(wide, {Scalar(6)});
    REQUIRE(y.has_value());
    CHECK((*y)[0] == Scalar(6));
    CHECK((*y)[1] == Scalar(0));
    CHECK((*y)[2] == Scalar(0));
}

TEST_CASE("weighted least squares residual is W-orthogonal to the range") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> d(-5, 5);
    for (int c = 0; c < 30; ++c) {
        int rows = 5, cols = 3;
        ScalarMatrix m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                m.at(i, j) = Scalar::exact(Rational(d(rng), 1), Rational(d(rng), 2));
        std::vector<Scalar> w, t;
        for (int i = 0; i < rows; ++i) {
            w.push_back(Scalar(i + 1));  // positive weights
            t.push_back(Scalar::exact(Rational(d(rng), 2), Rational(d(rng), 3)));
        }
        auto x = lstsq_weighted(m, w, t);
        auto mx = m.apply(x);
        std::vector<Scalar> r(rows);
        for (int i = 0; i < rows; ++i) r[i] = t[i] - mx[i];
        // columns^H W r == 0 exactly
        for (int j = 0; j < cols; ++j) {
            Scalar acc(0);
            for (int i = 0; i < rows; ++i) acc += m.at(i, j).conj() * w[i] * r[i];
            CHECK(acc.is_zero());
        }
    }
}

TEST_CASE("lstsq recovers an exact solution when one exists") {
    auto m = from_ints(3, 2, {1, 0, 0, 1, 1, 1});
    std::vector<Scalar> w{Scalar(1), Scalar(2), Scalar(6)};
    std::vector<Scalar> t{Scalar(2), Scalar(3), Scalar(5)};  // = m * (2,3)
    auto x = lstsq_weighted(m, w, t);
    CHECK(x[0] == Scalar(2));
    CHECK(x[1] == Scalar(3));
}

TEST_CASE("floating backend pivoting") {
    ScalarMatrix m(2, 2);
    m.at(0, 0) = Scalar::floating(1e-13);  // below zero tolerance: not a pivot
    m.at(0, 1) = Scalar::floating(1.0);
    m.at(1, 0) = Scalar::floating(2.0);
    m.at(1, 1) = Scalar::floating(0.0);
    CHECK(rank(m) == 2);
}

#include "doctest.h"

#include <cmath>

#include "defconn/linalg.hpp"

using namespace defconn;

TEST_CASE("jacobi eigensolver on a known matrix") {
    // eigenvalues of [[2,1,0],[1,2,0],[0,0,5]] are 1, 3, 5
    const Mat3 m{2, 1, 0, 1, 2, 0, 0, 0, 5};
    const SymEigen e = sym_eigen(m);
    CHECK(e.values[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(e.values[1] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(e.values[2] == doctest::Approx(5.0).epsilon(1e-14));
}

TEST_CASE("eigensolver residuals and orthonormality on random symmetric matrices") {
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        Mat3 m;
        for (int i = 0; i < 9; ++i) m.m[i] = rng.gaussian();
        m = symmetrize(m);
        const SymEigen e = sym_eigen(m);

        CHECK(e.values[0] <= e.values[1]);
        CHECK(e.values[1] <= e.values[2]);
        for (int i = 0; i < 3; ++i) {
            const Vec3 res = m * e.vectors[i] - e.vectors[i] * e.values[i];
            CHECK(norm(res) < 1e-12 * std::max(1.0, max_abs(m)));
            CHECK(norm(e.vectors[i]) == doctest::Approx(1.0).epsilon(1e-13));
        }
        CHECK(std::abs(dot(e.vectors[0], e.vectors[1])) < 1e-12);
        CHECK(std::abs(dot(e.vectors[0], e.vectors[2])) < 1e-12);
        CHECK(std::abs(dot(e.vectors[1], e.vectors[2])) < 1e-12);

        // trace and determinant agree with the spectrum
        CHECK(trace(m) ==
              doctest::Approx(e.values[0] + e.values[1] + e.values[2]).epsilon(1e-12));
        CHECK(det(m) ==
              doctest::Approx(e.values[0] * e.values[1] * e.values[2]).epsilon(1e-10));
    }
}

TEST_CASE("sphere lattice is unit and deterministic") {
    const auto pts = fibonacci_sphere(1024);
    REQUIRE(pts.size() == 1024);
    for (const Vec3& p : pts) CHECK(norm(p) == doctest::Approx(1.0).epsilon(1e-14));
    const auto pts2 = fibonacci_sphere(1024);
    CHECK(pts[100][0] == pts2[100][0]);
}

TEST_CASE("random streams are reproducible and sample-independent") {
    Rng a(123), b(123);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    Rng s0 = Rng::for_sample(42, 0);
    Rng s1 = Rng::for_sample(42, 1);
    CHECK(s0.next_u64() != s1.next_u64());

    // gaussian moments sanity
    Rng g(5);
    double mean = 0.0, var = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double x = g.gaussian();
        mean += x;
        var += x * x;
    }
    mean /= n;
    var = var / n - mean * mean;
    CHECK(std::abs(mean) < 0.03);
    CHECK(std::abs(var - 1.0) < 0.05);
}

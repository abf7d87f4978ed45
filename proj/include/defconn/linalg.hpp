#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

// Small fixed-size real linear algebra used throughout the library.
// Everything is value-typed and deterministic; no dynamic allocation
// beyond std::vector for point sets.

namespace defconn {

struct Vec3 {
    double v[3]{0.0, 0.0, 0.0};

    double& operator[](int i) { return v[i]; }
    double operator[](int i) const { return v[i]; }

    Vec3 operator+(const Vec3& o) const { return {v[0] + o.v[0], v[1] + o.v[1], v[2] + o.v[2]}; }
    Vec3 operator-(const Vec3& o) const { return {v[0] - o.v[0], v[1] - o.v[1], v[2] - o.v[2]}; }
    Vec3 operator*(double c) const { return {c * v[0], c * v[1], c * v[2]}; }
    Vec3 operator-() const { return {-v[0], -v[1], -v[2]}; }
};

inline double dot(const Vec3& a, const Vec3& b) {
    return a.v[0] * b.v[0] + a.v[1] * b.v[1] + a.v[2] * b.v[2];
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 normalized(const Vec3& a) {
    const double n = norm(a);
    return {a.v[0] / n, a.v[1] / n, a.v[2] / n};
}

// Row-major 3x3 matrix.
struct Mat3 {
    double m[9]{0, 0, 0, 0, 0, 0, 0, 0, 0};

    double& operator()(int r, int c) { return m[3 * r + c]; }
    double operator()(int r, int c) const { return m[3 * r + c]; }

    static Mat3 identity() { return {1, 0, 0, 0, 1, 0, 0, 0, 1}; }
    static Mat3 diag(double a, double b, double c) { return {a, 0, 0, 0, b, 0, 0, 0, c}; }
    static Mat3 zero() { return {}; }

    Mat3 operator+(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 9; ++i) r.m[i] = m[i] + o.m[i];
        return r;
    }
    Mat3 operator-(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 9; ++i) r.m[i] = m[i] - o.m[i];
        return r;
    }
    Mat3 operator*(double c) const {
        Mat3 r;
        for (int i = 0; i < 9; ++i) r.m[i] = c * m[i];
        return r;
    }
};

Mat3 operator*(const Mat3& a, const Mat3& b);
Vec3 operator*(const Mat3& a, const Vec3& x);

Mat3 transpose(const Mat3& a);
Mat3 symmetrize(const Mat3& a);
double trace(const Mat3& a);
double det(const Mat3& a);
double frobenius_norm(const Mat3& a);
double max_abs(const Mat3& a);
bool all_finite(const Mat3& a);

// Eigen-decomposition of a symmetric 3x3 matrix by cyclic Jacobi rotations.
// Eigenvalues are returned in ascending order; vectors[i] is the unit
// eigenvector for values[i]. The input is symmetrized first.
struct SymEigen {
    double values[3];
    Vec3 vectors[3];
};
SymEigen sym_eigen(const Mat3& a);

// Smallest |eigenvalue| and signature (#positive - #negative, counting an
// eigenvalue as zero when |lambda| <= tol).
int sym_signature(const SymEigen& e, double tol);

// Deterministic unit-sphere point set (golden-angle spiral), poles avoided.
std::vector<Vec3> fibonacci_sphere(int n);

// Deterministic, portable random stream: xoshiro-free, fixed algorithm
// (SplitMix64 seeded Mersenne state is avoided on purpose; the generator
// below produces identical streams on every platform).
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();
    // Uniform in [0, 1).
    double uniform();
    double uniform(double lo, double hi);
    // Standard normal via Box-Muller on the uniform stream.
    double gaussian();
    // Derive an independent deterministic stream for sample `index`.
    static Rng for_sample(std::uint64_t seed, std::uint64_t index);

private:
    std::uint64_t s_[4];
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace defconn

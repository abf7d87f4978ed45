#include "defconn/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace defconn {

Mat3 operator*(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
            r(i, j) = s;
        }
    return r;
}

Vec3 operator*(const Mat3& a, const Vec3& x) {
    Vec3 y;
    for (int i = 0; i < 3; ++i) y[i] = a(i, 0) * x[0] + a(i, 1) * x[1] + a(i, 2) * x[2];
    return y;
}

Mat3 transpose(const Mat3& a) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = a(j, i);
    return r;
}

Mat3 symmetrize(const Mat3& a) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = 0.5 * (a(i, j) + a(j, i));
    return r;
}

double trace(const Mat3& a) { return a(0, 0) + a(1, 1) + a(2, 2); }

double det(const Mat3& a) {
    return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
           a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
           a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

double frobenius_norm(const Mat3& a) {
    double s = 0.0;
    for (double x : a.m) s += x * x;
    return std::sqrt(s);
}

double max_abs(const Mat3& a) {
    double s = 0.0;
    for (double x : a.m) s = std::max(s, std::abs(x));
    return s;
}

bool all_finite(const Mat3& a) {
    for (double x : a.m)
        if (!std::isfinite(x)) return false;
    return true;
}

SymEigen sym_eigen(const Mat3& input) {
    Mat3 a = symmetrize(input);
    Mat3 v = Mat3::identity();

    auto off = [](const Mat3& x) {
        return x(0, 1) * x(0, 1) + x(0, 2) * x(0, 2) + x(1, 2) * x(1, 2);
    };

    const double scale = std::max(1e-300, max_abs(a));
    for (int sweep = 0; sweep < 64 && off(a) > 1e-32 * scale * scale; ++sweep) {
        for (int p = 0; p < 2; ++p) {
            for (int q = p + 1; q < 3; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                if (theta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                Mat3 rot = Mat3::identity();
                rot(p, p) = c;
                rot(q, q) = c;
                rot(p, q) = s;
                rot(q, p) = -s;
                a = transpose(rot) * a * rot;
                a(p, q) = a(q, p) = 0.0;
                v = v * rot;
            }
        }
    }

    int order[3] = {0, 1, 2};
    double d[3] = {a(0, 0), a(1, 1), a(2, 2)};
    std::sort(order, order + 3, [&](int i, int j) { return d[i] < d[j]; });

    SymEigen e{};
    for (int i = 0; i < 3; ++i) {
        e.values[i] = d[order[i]];
        e.vectors[i] = Vec3{v(0, order[i]), v(1, order[i]), v(2, order[i])};
    }
    return e;
}

int sym_signature(const SymEigen& e, double tol) {
    int sig = 0;
    for (double x : e.values) {
        if (x > tol)
            ++sig;
        else if (x < -tol)
            --sig;
    }
    return sig;
}

std::vector<Vec3> fibonacci_sphere(int n) {
    std::vector<Vec3> pts;
    if (n <= 0) return pts;
    pts.reserve(static_cast<std::size_t>(n));
    const double golden = M_PI * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < n; ++i) {
        const double z = 1.0 - (2.0 * i + 1.0) / n;
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double th = golden * i;
        pts.push_back(Vec3{r * std::cos(th), r * std::sin(th), z});
    }
    return pts;
}

namespace {
inline std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
}  // namespace

Rng::Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& s : s_) s = splitmix64(x);
    have_spare_ = false;
}

std::uint64_t Rng::next_u64() {
    // xoshiro256**
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = 0.0;
    do {
        u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    spare_ = mag * std::sin(2.0 * M_PI * u2);
    have_spare_ = true;
    return mag * std::cos(2.0 * M_PI * u2);
}

Rng Rng::for_sample(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t x = seed;
    const std::uint64_t a = splitmix64(x);
    x = index ^ 0xd1b54a32d192ed03ULL;
    const std::uint64_t b = splitmix64(x);
    return Rng(a ^ rotl(b, 23) ^ (index * 0x9e3779b97f4a7c15ULL));
}

}  // namespace defconn

#include "defconn/cohom.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <utility>

#include "defconn/errors.hpp"

namespace defconn {

namespace {

Profile closed_form(std::function<double(double)> f, std::function<double(double)> d1,
                    std::function<double(double)> d2) {
    Profile p;
    p.f = std::move(f);
    p.d1 = std::move(d1);
    p.d2 = std::move(d2);
    return p;
}

Profile sinh_profile() {
    return closed_form([](double r) { return std::sinh(r); },
                       [](double r) { return std::cosh(r); },
                       [](double r) { return std::sinh(r); });
}
Profile cosh_profile(double c) {
    return closed_form([c](double r) { return c * std::cosh(r); },
                       [c](double r) { return c * std::sinh(r); },
                       [c](double r) { return c * std::cosh(r); });
}
Profile sin_profile() {
    return closed_form([](double r) { return std::sin(r); },
                       [](double r) { return std::cos(r); },
                       [](double r) { return -std::sin(r); });
}

// Uniform-grid table with finite-difference derivatives: central O(h^2)
// differences at interior nodes, one-sided at the ends, cubic Hermite for
// values and linear interpolation for the derivative arrays in between.
struct Table {
    std::vector<double> r, f, d1, d2;
    double h = 0.0;

    double value(double x) const {
        const auto [i, t] = locate(x);
        if (t == 0.0) return f[i];
        const double p0 = f[i], p1 = f[i + 1], m0 = d1[i] * h, m1 = d1[i + 1] * h;
        const double t2 = t * t, t3 = t2 * t;
        return p0 * (2 * t3 - 3 * t2 + 1) + m0 * (t3 - 2 * t2 + t) + p1 * (-2 * t3 + 3 * t2) +
               m1 * (t3 - t2);
    }
    double deriv1(double x) const {
        const auto [i, t] = locate(x);
        return t == 0.0 ? d1[i] : (1.0 - t) * d1[i] + t * d1[i + 1];
    }
    double deriv2(double x) const {
        const auto [i, t] = locate(x);
        return t == 0.0 ? d2[i] : (1.0 - t) * d2[i] + t * d2[i + 1];
    }

    std::pair<int, double> locate(double x) const {
        if (x < r.front() - 1e-9 * h || x > r.back() + 1e-9 * h)
            fail(ErrorCode::DomainError, "query outside table range");
        const double u = (x - r.front()) / h;
        int i = static_cast<int>(std::floor(u));
        i = std::clamp(i, 0, static_cast<int>(r.size()) - 2);
        double t = u - i;
        if (std::abs(t) < 1e-9) t = 0.0;
        if (std::abs(t - 1.0) < 1e-9) {
            ++i;
            t = 0.0;
            if (i == static_cast<int>(r.size()) - 1) return {i, 0.0};
            --i;
            t = 1.0;
        }
        return {i, t};
    }
};

Profile table_profile(std::vector<double> r, std::vector<double> f, double h) {
    const std::size_t n = r.size();
    if (n < 4) fail(ErrorCode::BadParams, "table needs at least 4 points");
    if (f.size() != n) fail(ErrorCode::BadParams, "table arrays must have equal length");
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (std::abs((r[i + 1] - r[i]) - h) > 1e-9 * h)
            fail(ErrorCode::BadParams, "table grid must be uniform with spacing fd_step");
    for (double x : f)
        if (!std::isfinite(x)) fail(ErrorCode::NonFinite, "table values must be finite");

    auto tab = std::make_shared<Table>();
    tab->r = std::move(r);
    tab->f = std::move(f);
    tab->h = h;
    tab->d1.resize(n);
    tab->d2.resize(n);
    const auto& ff = tab->f;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        tab->d1[i] = (ff[i + 1] - ff[i - 1]) / (2.0 * h);
        tab->d2[i] = (ff[i + 1] - 2.0 * ff[i] + ff[i - 1]) / (h * h);
    }
    tab->d1[0] = (-3.0 * ff[0] + 4.0 * ff[1] - ff[2]) / (2.0 * h);
    tab->d1[n - 1] = (3.0 * ff[n - 1] - 4.0 * ff[n - 2] + ff[n - 3]) / (2.0 * h);
    tab->d2[0] = (2.0 * ff[0] - 5.0 * ff[1] + 4.0 * ff[2] - ff[3]) / (h * h);
    tab->d2[n - 1] = (2.0 * ff[n - 1] - 5.0 * ff[n - 2] + 4.0 * ff[n - 3] - ff[n - 4]) / (h * h);

    Profile p;
    p.f = [tab](double x) { return tab->value(x); };
    p.d1 = [tab](double x) { return tab->deriv1(x); };
    p.d2 = [tab](double x) { return tab->deriv2(x); };
    return p;
}

}  // namespace

MetricFamily builtin_family(const std::string& name, int n) {
    MetricFamily fam;
    fam.name = name;
    if (name == "S4") {
        fam.f[0] = fam.f[1] = fam.f[2] = sin_profile();
        fam.r_min = 0.0;
        fam.r_max = M_PI;
        fam.closed_path[0] = [](double r) {
            PathPoint pt{};
            pt.a[0] = pt.a[1] = pt.a[2] = -(std::cos(r) + 1.0) / 2.0;
            pt.aprime[0] = pt.aprime[1] = pt.aprime[2] = std::sin(r) / 2.0;
            return pt;
        };
        fam.closed_path[1] = [](double r) {
            PathPoint pt{};
            pt.a[0] = pt.a[1] = pt.a[2] = (std::cos(r) - 1.0) / 2.0;
            pt.aprime[0] = pt.aprime[1] = pt.aprime[2] = -std::sin(r) / 2.0;
            return pt;
        };
    } else if (name == "H4") {
        fam.f[0] = fam.f[1] = fam.f[2] = sinh_profile();
        fam.r_min = 0.0;
        fam.r_max = std::numeric_limits<double>::infinity();
        fam.closed_path[0] = [](double r) {
            PathPoint pt{};
            pt.a[0] = pt.a[1] = pt.a[2] = -(std::cosh(r) + 1.0) / 2.0;
            pt.aprime[0] = pt.aprime[1] = pt.aprime[2] = -std::sinh(r) / 2.0;
            return pt;
        };
        fam.closed_path[1] = [](double r) {
            PathPoint pt{};
            pt.a[0] = pt.a[1] = pt.a[2] = (std::cosh(r) - 1.0) / 2.0;
            pt.aprime[0] = pt.aprime[1] = pt.aprime[2] = std::sinh(r) / 2.0;
            return pt;
        };
    } else if (name == "CP2") {
        fam.f[0] = closed_form([](double r) { return std::sin(r) * std::cos(r); },
                               [](double r) { return std::cos(2.0 * r); },
                               [](double r) { return -2.0 * std::sin(2.0 * r); });
        fam.f[1] = fam.f[2] = sin_profile();
        fam.r_min = 0.0;
        fam.r_max = 0.5 * M_PI;
        fam.closed_path[0] = [](double r) {
            const double c = std::cos(r), s = std::sin(r);
            PathPoint pt{};
            pt.a[0] = -(c * c + 1.0) / 2.0;
            pt.a[1] = pt.a[2] = -c;
            pt.aprime[0] = c * s;
            pt.aprime[1] = pt.aprime[2] = s;
            return pt;
        };
        fam.closed_path[1] = [](double r) {
            const double c = std::cos(r), s = std::sin(r);
            PathPoint pt{};
            pt.a[0] = -1.5 * s * s;
            pt.a[1] = pt.a[2] = 0.0;
            pt.aprime[0] = -3.0 * s * c;
            pt.aprime[1] = pt.aprime[2] = 0.0;
            return pt;
        };
    } else if (name == "CH2") {
        fam.f[0] = closed_form([](double r) { return std::sinh(r) * std::cosh(r); },
                               [](double r) { return std::cosh(2.0 * r); },
                               [](double r) { return 2.0 * std::sinh(2.0 * r); });
        fam.f[1] = fam.f[2] = sinh_profile();
        fam.r_min = 0.0;
        fam.r_max = std::numeric_limits<double>::infinity();
        fam.closed_path[0] = [](double r) {
            const double c = std::cosh(r), s = std::sinh(r);
            PathPoint pt{};
            pt.a[0] = -(c * c + 1.0) / 2.0;
            pt.a[1] = pt.a[2] = -c;
            pt.aprime[0] = -c * s;
            pt.aprime[1] = pt.aprime[2] = -s;
            return pt;
        };
        fam.closed_path[1] = [](double r) {
            const double c = std::cosh(r), s = std::sinh(r);
            PathPoint pt{};
            pt.a[0] = 1.5 * s * s;
            pt.a[1] = pt.a[2] = 0.0;
            pt.aprime[0] = 3.0 * s * c;
            pt.aprime[1] = pt.aprime[2] = 0.0;
            return pt;
        };
    } else if (name == "On") {
        if (n < 1) fail(ErrorCode::BadParams, "On-family parameter n must be a positive integer");
        const double c = std::sqrt(static_cast<double>(n));
        fam.f[0] = closed_form([c](double r) { return c * std::sinh(r); },
                               [c](double r) { return c * std::cosh(r); },
                               [c](double r) { return c * std::sinh(r); });
        fam.f[1] = fam.f[2] = cosh_profile(c);
        fam.r_min = 0.0;
        fam.r_max = std::numeric_limits<double>::infinity();
        fam.name = "On(" + std::to_string(n) + ")";
        // a_1 = -+ (c/2) cosh - 1/2 - sech^2/2, a_2 = a_3 = -+ (c/2) sinh - tanh/2
        for (int bundle = 0; bundle < 2; ++bundle) {
            const double sg = bundle == 0 ? -1.0 : 1.0;
            fam.closed_path[bundle] = [c, sg](double r) {
                const double ch = std::cosh(r), sh = std::sinh(r);
                const double sech2 = 1.0 / (ch * ch), th = sh / ch;
                PathPoint pt{};
                pt.a[0] = sg * 0.5 * c * ch - 0.5 - 0.5 * sech2;
                pt.a[1] = pt.a[2] = sg * 0.5 * c * sh - 0.5 * th;
                pt.aprime[0] = sg * 0.5 * c * sh + sech2 * th;
                pt.aprime[1] = pt.aprime[2] = sg * 0.5 * c * ch - 0.5 * sech2;
                return pt;
            };
        }
    } else {
        fail(ErrorCode::BadParams, "unknown builtin family: " + name);
    }
    return fam;
}

MetricFamily table_family(const std::vector<double>& r, const std::vector<double>& f1,
                          const std::vector<double>& f2, const std::vector<double>& f3,
                          double fd_step) {
    if (r.size() < 4) fail(ErrorCode::BadParams, "table needs at least 4 points");
    if (!(fd_step > 0.0)) fail(ErrorCode::BadParams, "fd_step must be positive");
    MetricFamily fam;
    fam.name = "table";
    fam.f[0] = table_profile(r, f1, fd_step);
    fam.f[1] = table_profile(r, f2, fd_step);
    fam.f[2] = table_profile(r, f3, fd_step);
    fam.r_min = r.front();
    fam.r_max = r.back();
    return fam;
}

namespace {

// Blend data: sigma'' on the window is continuous piecewise linear with
// positive node values, so sigma' > 0 and sigma'' > 0 hold by construction;
// the two free interior heights are solved from the C^2 matching integrals
//   int sigma''           = sigma'(b1) - sigma'(b0),
//   int (b1 - x) sigma''  = sigma(b1) - sigma(b0) - sigma'(b0) (b1 - b0).
struct ConvexBlend {
    double b0 = 0.0;
    double m0 = 0.0, p0 = 0.0;
    std::array<double, 6> x{};   // local node positions, x[0] = 0
    std::array<double, 6> v{};   // sigma'' at the nodes
    std::array<double, 6> s1{};  // prefix of int sigma''
    std::array<double, 6> s2{};  // prefix of int int sigma''

    void finalize() {
        s1[0] = s2[0] = 0.0;
        for (int i = 0; i + 1 < 6; ++i) {
            const double l = x[i + 1] - x[i];
            const double slope = (v[i + 1] - v[i]) / l;
            s1[i + 1] = s1[i] + 0.5 * (v[i] + v[i + 1]) * l;
            s2[i + 1] = s2[i] + s1[i] * l + 0.5 * v[i] * l * l + slope * l * l * l / 6.0;
        }
    }
    double at(double r, int deriv) const {
        const double xx = r - b0;
        int i = 0;
        while (i + 2 < 6 && xx > x[i + 1]) ++i;
        const double t = xx - x[i];
        const double l = x[i + 1] - x[i];
        const double slope = (v[i + 1] - v[i]) / l;
        if (deriv == 2) return v[i] + slope * t;
        if (deriv == 1) return m0 + s1[i] + v[i] * t + 0.5 * slope * t * t;
        return p0 + m0 * xx + s2[i] + s1[i] * t + 0.5 * v[i] * t * t +
               slope * t * t * t / 6.0;
    }
};

}  // namespace

Profile gromov_thurston_profile(int k, double r0, double blend_lo, double blend_hi) {
    if (k < 2) fail(ErrorCode::BadParams, "cover degree k must be an integer >= 2");
    if (!(r0 > 0.0)) fail(ErrorCode::BadParams, "r0 must be positive");
    double b0 = blend_lo, b1 = blend_hi;
    if (b0 == 0.0 && b1 == 0.0) {
        b0 = r0 / 8.0;
        b1 = r0;
    }
    if (!(0.0 < b0 && b0 < b1 && b1 <= r0))
        fail(ErrorCode::BadParams, "blend window must satisfy 0 < b0 < b1 <= r0");

    const double kk = static_cast<double>(k);
    const double d = b1 - b0;
    const double p0 = std::sinh(b0), m0 = std::cosh(b0), s0 = std::sinh(b0);
    const double p1 = kk * std::sinh(b1), m1 = kk * std::cosh(b1), s1 = kk * std::sinh(b1);
    const double target1 = m1 - m0;
    const double target2 = p1 - p0 - m0 * d;

    // Candidate interior node placements (fractions of the window); the first
    // one that yields positive heights wins.
    const double candidates[][4] = {{0.06, 0.12, 0.88, 0.94},
                                    {0.03, 0.06, 0.94, 0.97},
                                    {0.10, 0.30, 0.70, 0.90},
                                    {0.20, 0.40, 0.60, 0.80}};

    auto blend = std::make_shared<ConvexBlend>();
    blend->b0 = b0;
    blend->m0 = m0;
    blend->p0 = p0;

    bool solved = false;
    for (const auto& th : candidates) {
        blend->x = {0.0, th[0] * d, th[1] * d, th[2] * d, th[3] * d, d};

        // Heights pattern (s0, h1, h2, h2, s1, s1): evaluate the two integral
        // constraints on a basis to get the affine map in (h1, h2).
        auto integrals = [&](double h1, double h2) {
            blend->v = {s0, h1, h2, h2, s1, s1};
            blend->finalize();
            return std::pair<double, double>{blend->s1[5], blend->s2[5]};
        };
        const auto [b1v, b2v] = integrals(0.0, 0.0);
        const auto [a11, a21] = integrals(1.0, 0.0);
        const auto [a12, a22] = integrals(0.0, 1.0);
        const double c11 = a11 - b1v, c12 = a12 - b1v;
        const double c21 = a21 - b2v, c22 = a22 - b2v;
        const double det = c11 * c22 - c12 * c21;
        if (std::abs(det) < 1e-14) continue;
        const double h1 = ((target1 - b1v) * c22 - c12 * (target2 - b2v)) / det;
        const double h2 = (c11 * (target2 - b2v) - (target1 - b1v) * c21) / det;
        const double floor = 1e-9 * std::max(1.0, s1);
        if (h1 > floor && h2 > floor) {
            integrals(h1, h2);
            solved = true;
            break;
        }
    }
    if (!solved)
        fail(ErrorCode::BadParams,
             "no convex profile joins sinh to k sinh on this blend window");

    Profile prof;
    prof.f = [blend, kk, b0, b1](double r) {
        if (r <= b0) return std::sinh(r);
        if (r >= b1) return kk * std::sinh(r);
        return blend->at(r, 0);
    };
    prof.d1 = [blend, kk, b0, b1](double r) {
        if (r <= b0) return std::cosh(r);
        if (r >= b1) return kk * std::cosh(r);
        return blend->at(r, 1);
    };
    prof.d2 = [blend, kk, b0, b1](double r) {
        if (r <= b0) return std::sinh(r);
        if (r >= b1) return kk * std::sinh(r);
        return blend->at(r, 2);
    };

    // The curvature formulas need sigma' > 0 and sigma'' > 0 on the blend.
    for (int i = 0; i <= 400; ++i) {
        const double r = b0 + (b1 - b0) * i / 400.0;
        if (!(prof.d1(r) > 0.0) || !(prof.d2(r) > 0.0))
            fail(ErrorCode::BadParams,
                 "blend parameters leave the profile non-convex at r = " + std::to_string(r));
    }
    return prof;
}

ConnectionPath connection_path(const MetricFamily& fam, Bundle bundle) {
    if (bundle == Bundle::Direct)
        fail(ErrorCode::InvalidArgument, "connection_path needs LambdaPlus or LambdaMinus");
    const double sign = (bundle == Bundle::LambdaPlus) ? -1.0 : 1.0;

    if (const auto& closed = fam.closed_path[bundle == Bundle::LambdaPlus ? 0 : 1]) {
        ConnectionPath path;
        path.bundle = bundle;
        path.r_min = fam.r_min;
        path.r_max = fam.r_max;
        path.eval = closed;
        return path;
    }

    // Copy the profiles so the path owns its data.
    auto f = std::make_shared<std::array<Profile, 3>>();
    (*f)[0] = fam.f[0];
    (*f)[1] = fam.f[1];
    (*f)[2] = fam.f[2];

    ConnectionPath path;
    path.bundle = bundle;
    path.r_min = fam.r_min;
    path.r_max = fam.r_max;
    path.eval = [f, sign](double r) {
        double v[3], v1[3], v2[3];
        for (int i = 0; i < 3; ++i) {
            v[i] = (*f)[i].f(r);
            v1[i] = (*f)[i].d1(r);
            v2[i] = (*f)[i].d2(r);
        }
        PathPoint pt{};
        for (int i = 0; i < 3; ++i) {
            const int j = (i + 1) % 3, k = (i + 2) % 3;
            const double den = 2.0 * v[j] * v[k];
            if (den == 0.0) fail(ErrorCode::DomainError, "profile product vanishes at r");
            const double num = v[i] * v[i] - v[j] * v[j] - v[k] * v[k];
            pt.a[i] = sign * 0.5 * v1[i] + num / den;

            const double num1 = 2.0 * (v[i] * v1[i] - v[j] * v1[j] - v[k] * v1[k]);
            const double den1 = 2.0 * (v1[j] * v[k] + v[j] * v1[k]);
            pt.aprime[i] = sign * 0.5 * v2[i] + (num1 * den - num * den1) / (den * den);
        }
        return pt;
    };
    return path;
}

ConnectionPath isotopy_path(double t) {
    if (!(t >= 0.0 && t <= 1.0)) fail(ErrorCode::OutOfRange, "isotopy parameter must be in [0,1]");
    ConnectionPath path;
    path.bundle = Bundle::Direct;
    path.r_min = 0.0;
    path.r_max = std::numeric_limits<double>::infinity();
    path.eval = [t](double r) {
        const double ch = std::cosh(r), sh = std::sinh(r);
        PathPoint pt{};
        pt.a[0] = -0.5 * (1.0 + ch) + 0.5 * t * ch * (1.0 - ch);
        pt.a[1] = pt.a[2] = -0.5 * (1.0 + ch) + 0.5 * t * (1.0 - ch);
        pt.aprime[0] = -0.5 * sh + 0.5 * t * sh * (1.0 - 2.0 * ch);
        pt.aprime[1] = pt.aprime[2] = -0.5 * sh - 0.5 * t * sh;
        return pt;
    };
    return path;
}

PathVerdict definite_path_margin(const ConnectionPath& path, const std::vector<double>& r_grid) {
    if (r_grid.size() < 2) fail(ErrorCode::InvalidArgument, "need at least 2 grid points");

    PathVerdict out;
    out.margin = std::numeric_limits<double>::infinity();
    int sign = 0;
    bool ok = true;
    for (double r : r_grid) {
        const PathPoint pt = path.eval(r);
        for (int i = 0; i < 3 && ok; ++i) {
            const int j = (i + 1) % 3, k = (i + 2) % 3;
            const double q = pt.aprime[i] * (pt.a[i] + pt.a[j] * pt.a[k]);
            const double scale =
                std::max(1.0, std::abs(pt.aprime[i]) *
                                  (std::abs(pt.a[i]) + std::abs(pt.a[j] * pt.a[k])));
            out.margin = std::min(out.margin, std::abs(q));
            if (std::abs(q) <= 1e-12 * scale) {
                ok = false;
                break;
            }
            const int s = q > 0.0 ? 1 : -1;
            if (sign == 0)
                sign = s;
            else if (sign != s)
                ok = false;
        }
        if (!ok) break;
    }
    out.definite = ok;
    out.common_sign = ok ? sign : 0;
    if (!ok) out.margin = 0.0;
    return out;
}

static std::vector<double> default_r_grid(double r_min, double r_max, int n) {
    const double lo = std::max(0.05, r_min + 0.05);
    double hi = std::min(8.0, r_max);
    if (std::isfinite(r_max) && r_max <= 8.0) hi = r_max - 0.05;
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1.0);
    return g;
}

std::vector<double> default_r_grid(const MetricFamily& fam, int n) {
    return default_r_grid(fam.r_min, fam.r_max, n);
}
std::vector<double> default_r_grid(const ConnectionPath& path, int n) {
    return default_r_grid(path.r_min, path.r_max, n);
}

CurvatureOperator reconstruct_blocks(const MetricFamily& fam, double r,
                                     const CalibrationConstants& calib) {
    if (!(r > fam.r_min && r < fam.r_max))
        fail(ErrorCode::DomainError, "radius outside the family's domain");

    double f[3];
    for (int i = 0; i < 3; ++i) {
        f[i] = fam.f[i].f(r);
        if (f[i] == 0.0) fail(ErrorCode::DomainError, "profile vanishes at r");
    }

    const PathPoint plus = connection_path(fam, Bundle::LambdaPlus).eval(r);
    const PathPoint minus = connection_path(fam, Bundle::LambdaMinus).eval(r);

    auto split = [&](const PathPoint& pt, int i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        const double P = calib.sd_weight * pt.aprime[i] / f[i];
        const double Q = calib.asd_weight * (pt.a[i] + pt.a[j] * pt.a[k]) / (f[j] * f[k]);
        return std::pair<double, double>{P, Q};
    };

    Mat3 A, B, C, Bt;
    for (int i = 0; i < 3; ++i) {
        const auto [Pm, Qm] = split(minus, i);
        A(i, i) = calib.plus_column_sign * 0.5 * (Pm + Qm);
        B(i, i) = calib.plus_column_sign * 0.5 * (Pm - Qm);
        const auto [Pp, Qp] = split(plus, i);
        C(i, i) = calib.minus_column_sign * 0.5 * (Pp - Qp);
        Bt(i, i) = calib.minus_column_sign * 0.5 * (Pp + Qp);
    }
    // The two routes to the off-diagonal block agree analytically; average
    // out the floating-point disagreement.
    const Mat3 Bavg = (B + transpose(Bt)) * 0.5;
    return make_operator(A, Bavg, C, /*relaxed=*/true);
}

}  // namespace defconn

#include "filippov/roots.hpp"

#include <algorithm>
#include <cmath>

namespace filippov {

namespace {

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

// Extremum of s * f on [lo, hi] (minimum for s = +1).
double golden_extremum(const std::function<double(double)>& f, double lo, double hi, int s) {
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = s * f(x1);
    double f2 = s * f(x2);
    for (int it = 0; it < 80 && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = s * f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = s * f(x2);
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double bisect_root(const std::function<double(double)>& f, double lo, double hi) {
    double flo = f(lo);
    if (flo == 0.0) return lo;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if (sign_of(fm) == sign_of(flo)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<ScalarRoot> find_roots(const std::function<double(double)>& f, double a, double b,
                                   std::size_t n, double zero_tol) {
    n = std::max<std::size_t>(n, 4);
    std::vector<double> t(n + 1), v(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        t[k] = (k == n) ? b : a + (b - a) * static_cast<double>(k) / static_cast<double>(n);
        v[k] = f(t[k]);
    }

    std::vector<ScalarRoot> out;
    if (v[0] == 0.0) out.push_back({a, false});
    for (std::size_t k = 0; k < n; ++k) {
        if (v[k + 1] == 0.0) {
            out.push_back({t[k + 1], false});
            continue;
        }
        if (v[k] != 0.0 && sign_of(v[k]) != sign_of(v[k + 1]))
            out.push_back({bisect_root(f, t[k], t[k + 1]), false});
    }

    // Interior local minima of |f| without a sampled sign change.
    for (std::size_t k = 1; k < n; ++k) {
        if (v[k] == 0.0) continue;
        const int s = sign_of(v[k]);
        if (sign_of(v[k - 1]) != s || sign_of(v[k + 1]) != s) continue;
        if (std::abs(v[k]) > std::abs(v[k - 1]) || std::abs(v[k]) > std::abs(v[k + 1])) continue;
        const double te = golden_extremum(f, t[k - 1], t[k + 1], s);
        const double fe = f(te);
        if (sign_of(fe) == -s) {
            out.push_back({bisect_root(f, t[k - 1], te), false});
            out.push_back({bisect_root(f, te, t[k + 1]), false});
        } else if (std::abs(fe) <= zero_tol) {
            out.push_back({te, true});
        }
    }

    std::sort(out.begin(), out.end(),
              [](const ScalarRoot& l, const ScalarRoot& r) { return l.t < r.t; });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const ScalarRoot& l, const ScalarRoot& r) { return l.t == r.t; }),
              out.end());
    return out;
}

}  // namespace filippov

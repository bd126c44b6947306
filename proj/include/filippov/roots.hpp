#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace filippov {

struct ScalarRoot {
    double t = 0.0;
    bool graze = false;  // touching zero without a sign change
};

/// Zeros of f on [a, b]: sign changes between n uniform samples are bisected
/// to full precision; sampled local minima of |f| are refined by golden
/// section and reported as grazes when |f| <= zero_tol there, or split into
/// two bracketed roots when f dips through zero between samples.
/// A root at a is reported; exact duplicates are merged.
std::vector<ScalarRoot> find_roots(const std::function<double(double)>& f, double a, double b,
                                   std::size_t n, double zero_tol);

/// Bisection on a bracket with f(lo) and f(hi) of opposite sign (or zero).
double bisect_root(const std::function<double(double)>& f, double lo, double hi);

}  // namespace filippov

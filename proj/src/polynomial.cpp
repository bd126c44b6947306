#include "filippov/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "filippov/errors.hpp"

namespace filippov {

namespace {

bool in_range(int i, int j, int k) {
    return i >= 0 && j >= 0 && k >= 0 && i + j + k <= Poly3::kMaxDegree;
}

double ipow(double x, int n) {
    double r = 1.0;
    for (int e = 0; e < n; ++e) r *= x;
    return r;
}

}  // namespace

double Poly3::coeff(int i, int j, int k) const {
    return in_range(i, j, k) ? coeff_[index(i, j, k)] : 0.0;
}

void Poly3::set_coeff(int i, int j, int k, double c) {
    if (!in_range(i, j, k)) throw Error(ErrorKind::InvalidArgument, "Poly3: degree exceeds 4");
    coeff_[index(i, j, k)] = c;
}

void Poly3::add_coeff(int i, int j, int k, double c) {
    if (!in_range(i, j, k)) throw Error(ErrorKind::InvalidArgument, "Poly3: degree exceeds 4");
    coeff_[index(i, j, k)] += c;
}

double Poly3::evaluate(const Vec3& x) const {
    double s = 0.0;
    for (int i = 0; i <= kMaxDegree; ++i)
        for (int j = 0; i + j <= kMaxDegree; ++j)
            for (int k = 0; i + j + k <= kMaxDegree; ++k) {
                const double c = coeff_[index(i, j, k)];
                if (c != 0.0) s += c * ipow(x[0], i) * ipow(x[1], j) * ipow(x[2], k);
            }
    return s;
}

Poly3 Poly3::derivative(std::size_t var) const {
    Poly3 d;
    for (int i = 0; i <= kMaxDegree; ++i)
        for (int j = 0; i + j <= kMaxDegree; ++j)
            for (int k = 0; i + j + k <= kMaxDegree; ++k) {
                const double c = coeff_[index(i, j, k)];
                if (c == 0.0) continue;
                if (var == 0 && i > 0) d.add_coeff(i - 1, j, k, c * i);
                if (var == 1 && j > 0) d.add_coeff(i, j - 1, k, c * j);
                if (var == 2 && k > 0) d.add_coeff(i, j, k - 1, c * k);
            }
    return d;
}

Vec3 Poly3::gradient(const Vec3& x) const {
    return {derivative(0).evaluate(x), derivative(1).evaluate(x), derivative(2).evaluate(x)};
}

Poly3 Poly3::lie_derivative(const Mat3& a) const {
    Poly3 out;
    for (std::size_t var = 0; var < 3; ++var) {
        const Poly3 d = derivative(var);
        // Multiply d by (A x)_var = sum_j a(var, j) x_j.
        for (int i = 0; i <= kMaxDegree; ++i)
            for (int j = 0; i + j <= kMaxDegree; ++j)
                for (int k = 0; i + j + k < kMaxDegree; ++k) {
                    const double c = d.coeff_[index(i, j, k)];
                    if (c == 0.0) continue;
                    out.add_coeff(i + 1, j, k, c * a(var, 0));
                    out.add_coeff(i, j + 1, k, c * a(var, 1));
                    out.add_coeff(i, j, k + 1, c * a(var, 2));
                }
    }
    return out;
}

double Poly3::max_abs_coeff_of_degree(int degree) const {
    double best = 0.0;
    for (int i = 0; i <= degree; ++i)
        for (int j = 0; i + j <= degree; ++j) best = std::max(best, std::abs(coeff(i, j, degree - i - j)));
    return best;
}

Poly3 operator+(const Poly3& l, const Poly3& r) {
    Poly3 out = l;
    for (std::size_t n = 0; n < out.coeff_.size(); ++n) out.coeff_[n] += r.coeff_[n];
    return out;
}

}  // namespace filippov

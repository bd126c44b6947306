#pragma once

#include <array>
#include <cstddef>

#include "filippov/algebra.hpp"

namespace filippov {

/// Dense polynomial in (x1, x2, x3) of total degree at most 4. Lie derivatives
/// along linear fields preserve the degree, so this is closed under every
/// operation the tangency analysis needs.
class Poly3 {
public:
    static constexpr int kMaxDegree = 4;

    Poly3() { coeff_.fill(0.0); }

    /// Coefficient of x1^i x2^j x3^k; zero (and not writable) when i+j+k > 4.
    double coeff(int i, int j, int k) const;
    void set_coeff(int i, int j, int k, double c);
    void add_coeff(int i, int j, int k, double c);

    double evaluate(const Vec3& x) const;
    Vec3 gradient(const Vec3& x) const;

    /// Partial derivative with respect to x_{var+1}.
    Poly3 derivative(std::size_t var) const;

    /// (L_A p)(x) = <grad p(x), A x>.
    Poly3 lie_derivative(const Mat3& a) const;

    /// Largest absolute coefficient among monomials of exactly this degree.
    double max_abs_coeff_of_degree(int degree) const;

    friend Poly3 operator+(const Poly3& l, const Poly3& r);

private:
    static constexpr std::size_t index(int i, int j, int k) {
        return static_cast<std::size_t>(25 * i + 5 * j + k);
    }
    std::array<double, 125> coeff_;
};

}  // namespace filippov

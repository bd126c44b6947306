#pragma once

// Small fixed-size linear algebra for the 3-dimensional piecewise-linear
// systems: vectors, matrices, symmetric eigendecomposition, the matrix
// exponential and a numerically stable quadratic solver.

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

namespace filippov {

struct Vec3 {
    std::array<double, 3> v{0.0, 0.0, 0.0};

    constexpr Vec3() = default;
    constexpr Vec3(double x1, double x2, double x3) : v{x1, x2, x3} {}

    constexpr double& operator[](std::size_t i) { return v[i]; }
    constexpr double operator[](std::size_t i) const { return v[i]; }

    constexpr double x1() const { return v[0]; }
    constexpr double x2() const { return v[1]; }
    constexpr double x3() const { return v[2]; }

    constexpr Vec3& operator+=(const Vec3& o) {
        for (std::size_t i = 0; i < 3; ++i) v[i] += o.v[i];
        return *this;
    }
    constexpr Vec3& operator-=(const Vec3& o) {
        for (std::size_t i = 0; i < 3; ++i) v[i] -= o.v[i];
        return *this;
    }
    constexpr Vec3& operator*=(double s) {
        for (auto& c : v) c *= s;
        return *this;
    }

    friend constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
    friend constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
    friend constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
    friend constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
    friend constexpr Vec3 operator/(Vec3 a, double s) { return a *= (1.0 / s); }
    friend constexpr Vec3 operator-(Vec3 a) { return a *= -1.0; }
    friend constexpr bool operator==(const Vec3&, const Vec3&) = default;

    bool is_finite() const {
        return std::isfinite(v[0]) && std::isfinite(v[1]) && std::isfinite(v[2]);
    }
};

constexpr double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline double norm(const Vec3& a) { return std::hypot(a[0], a[1], a[2]); }
constexpr double squared_norm(const Vec3& a) { return dot(a, a); }

/// Unit vector along a; a must be nonzero.
inline Vec3 normalized(const Vec3& a) { return a / norm(a); }

/// Two unit vectors completing n (unit) to a right-handed orthonormal basis (e1, e2, n).
std::pair<Vec3, Vec3> orthonormal_complement(const Vec3& n);

/// Row-major 3x3 matrix; (i, j) is zero-based.
struct Mat3 {
    std::array<double, 9> a{};

    constexpr Mat3() = default;
    constexpr Mat3(std::initializer_list<std::initializer_list<double>> rows) {
        std::size_t i = 0;
        for (const auto& row : rows) {
            std::size_t j = 0;
            for (double x : row) {
                if (i < 3 && j < 3) a[3 * i + j] = x;
                ++j;
            }
            ++i;
        }
    }

    static constexpr Mat3 zero() { return Mat3{}; }
    static constexpr Mat3 identity() { return Mat3{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}; }
    static constexpr Mat3 diagonal(double d1, double d2, double d3) {
        return Mat3{{d1, 0, 0}, {0, d2, 0}, {0, 0, d3}};
    }
    /// Cross-product matrix: skew(w) * x == cross(w, x).
    static constexpr Mat3 skew(const Vec3& w) {
        return Mat3{{0, -w[2], w[1]}, {w[2], 0, -w[0]}, {-w[1], w[0], 0}};
    }
    static constexpr Mat3 outer(const Vec3& u, const Vec3& v) {
        Mat3 m;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) m(i, j) = u[i] * v[j];
        return m;
    }

    constexpr double& operator()(std::size_t i, std::size_t j) { return a[3 * i + j]; }
    constexpr double operator()(std::size_t i, std::size_t j) const { return a[3 * i + j]; }

    constexpr Mat3 transpose() const {
        Mat3 t;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) t(i, j) = (*this)(j, i);
        return t;
    }

    constexpr Mat3& operator+=(const Mat3& o) {
        for (std::size_t k = 0; k < 9; ++k) a[k] += o.a[k];
        return *this;
    }
    constexpr Mat3& operator-=(const Mat3& o) {
        for (std::size_t k = 0; k < 9; ++k) a[k] -= o.a[k];
        return *this;
    }
    constexpr Mat3& operator*=(double s) {
        for (auto& x : a) x *= s;
        return *this;
    }

    friend constexpr Mat3 operator+(Mat3 m, const Mat3& o) { return m += o; }
    friend constexpr Mat3 operator-(Mat3 m, const Mat3& o) { return m -= o; }
    friend constexpr Mat3 operator*(Mat3 m, double s) { return m *= s; }
    friend constexpr Mat3 operator*(double s, Mat3 m) { return m *= s; }
    friend constexpr Mat3 operator-(Mat3 m) { return m *= -1.0; }
    friend constexpr bool operator==(const Mat3&, const Mat3&) = default;

    friend constexpr Mat3 operator*(const Mat3& l, const Mat3& r) {
        Mat3 p;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                p(i, j) = l(i, 0) * r(0, j) + l(i, 1) * r(1, j) + l(i, 2) * r(2, j);
        return p;
    }
    friend constexpr Vec3 operator*(const Mat3& m, const Vec3& x) {
        return {m(0, 0) * x[0] + m(0, 1) * x[1] + m(0, 2) * x[2],
                m(1, 0) * x[0] + m(1, 1) * x[1] + m(1, 2) * x[2],
                m(2, 0) * x[0] + m(2, 1) * x[1] + m(2, 2) * x[2]};
    }

    bool is_finite() const {
        for (double x : a)
            if (!std::isfinite(x)) return false;
        return true;
    }
};

/// Frobenius norm.
double frobenius_norm(const Mat3& m);
/// Induced 1-norm (max column sum).
double one_norm(const Mat3& m);
/// Solves m * X = rhs with partial pivoting; m must be nonsingular.
Mat3 solve(const Mat3& m, const Mat3& rhs);

/// Symmetric quadratic form stored by its upper triangle. The eigendecomposition
/// is computed once at construction: eigenvalues descending, eigenvectors
/// orthonormal.
class SymForm3 {
public:
    SymForm3() : SymForm3(0, 0, 0, 0, 0, 0) {}
    SymForm3(double q11, double q12, double q13, double q22, double q23, double q33);

    /// Uses the upper triangle of m; the lower triangle is ignored.
    static SymForm3 from_upper(const Mat3& m);

    double operator()(std::size_t i, std::size_t j) const;
    Mat3 matrix() const;

    /// x^T Q x
    double evaluate(const Vec3& x) const;

    const std::array<double, 3>& eigenvalues() const { return values_; }
    const std::array<Vec3, 3>& eigenvectors() const { return vectors_; }
    double spectral_radius() const;

private:
    std::array<double, 6> upper_;  // q11 q12 q13 q22 q23 q33
    std::array<double, 3> values_{};
    std::array<Vec3, 3> vectors_{};
};

struct SymEigen {
    std::array<double, 3> values;  // descending
    std::array<Vec3, 3> vectors;   // vectors[i] pairs with values[i]
};

/// Cyclic Jacobi eigendecomposition of a symmetric 3x3 form.
SymEigen sym_eigen(const SymForm3& q);

struct Inertia {
    int n_plus = 0;
    int n_minus = 0;
    int n_zero = 0;

    int rank() const { return n_plus + n_minus; }
    friend bool operator==(const Inertia&, const Inertia&) = default;
};

/// Counts eigenvalues above tol*s, below -tol*s and in between, with
/// s = max(1, spectral radius).
Inertia inertia(const SymForm3& q, double tol);

/// exp(m) by scaling and squaring with the diagonal (6,6) Pade approximant.
Mat3 expm(const Mat3& m);

/// exp(A t) x0. Exact for t == 0. Throws Error(Overflow) on non-finite output.
Vec3 expm_apply(const Mat3& a, double t, const Vec3& x0);

struct QuadraticRoots {
    std::vector<double> roots;        // ascending; a double root appears once
    bool identically_zero = false;    // c2 == c1 == c0 == 0
    bool double_root = false;
};

/// Real roots of c2 s^2 + c1 s + c0. A discriminant within 1e-12 of the
/// coefficient scale is treated as a double root; c2 == 0 degrades to the
/// linear case.
QuadraticRoots solve_quadratic(double c2, double c1, double c0);

}  // namespace filippov

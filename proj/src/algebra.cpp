#include "filippov/algebra.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "filippov/errors.hpp"

namespace filippov {

std::pair<Vec3, Vec3> orthonormal_complement(const Vec3& n) {
    // Start from the axis least aligned with n.
    std::size_t k = 0;
    for (std::size_t i = 1; i < 3; ++i)
        if (std::abs(n[i]) < std::abs(n[k])) k = i;
    Vec3 axis;
    axis[k] = 1.0;
    const Vec3 e1 = normalized(axis - dot(axis, n) * n);
    const Vec3 e2 = cross(n, e1);
    return {e1, e2};
}

double frobenius_norm(const Mat3& m) {
    double s = 0.0;
    for (double x : m.a) s += x * x;
    return std::sqrt(s);
}

double one_norm(const Mat3& m) {
    double best = 0.0;
    for (std::size_t j = 0; j < 3; ++j)
        best = std::max(best, std::abs(m(0, j)) + std::abs(m(1, j)) + std::abs(m(2, j)));
    return best;
}

Mat3 solve(const Mat3& m, const Mat3& rhs) {
    Mat3 lu = m;
    Mat3 x = rhs;
    for (std::size_t col = 0; col < 3; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < 3; ++r)
            if (std::abs(lu(r, col)) > std::abs(lu(pivot, col))) pivot = r;
        if (pivot != col) {
            for (std::size_t j = 0; j < 3; ++j) {
                std::swap(lu(col, j), lu(pivot, j));
                std::swap(x(col, j), x(pivot, j));
            }
        }
        for (std::size_t r = col + 1; r < 3; ++r) {
            const double f = lu(r, col) / lu(col, col);
            for (std::size_t j = col; j < 3; ++j) lu(r, j) -= f * lu(col, j);
            for (std::size_t j = 0; j < 3; ++j) x(r, j) -= f * x(col, j);
        }
    }
    for (std::size_t c = 0; c < 3; ++c) {
        for (std::size_t r = 3; r-- > 0;) {
            double s = x(r, c);
            for (std::size_t j = r + 1; j < 3; ++j) s -= lu(r, j) * x(j, c);
            x(r, c) = s / lu(r, r);
        }
    }
    return x;
}

// ---------------------------------------------------------------------------
// Symmetric forms

SymForm3::SymForm3(double q11, double q12, double q13, double q22, double q23, double q33)
    : upper_{q11, q12, q13, q22, q23, q33} {
    const SymEigen eig = sym_eigen(*this);
    values_ = eig.values;
    vectors_ = eig.vectors;
}

SymForm3 SymForm3::from_upper(const Mat3& m) {
    return SymForm3(m(0, 0), m(0, 1), m(0, 2), m(1, 1), m(1, 2), m(2, 2));
}

double SymForm3::operator()(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    static constexpr std::array<std::array<std::size_t, 3>, 3> index{
        {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}}};
    return upper_[index[i][j]];
}

Mat3 SymForm3::matrix() const {
    Mat3 m;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) m(i, j) = (*this)(i, j);
    return m;
}

double SymForm3::evaluate(const Vec3& x) const {
    const auto& q = upper_;
    return q[0] * x[0] * x[0] + q[3] * x[1] * x[1] + q[5] * x[2] * x[2] +
           2.0 * (q[1] * x[0] * x[1] + q[2] * x[0] * x[2] + q[4] * x[1] * x[2]);
}

double SymForm3::spectral_radius() const {
    return std::max({std::abs(values_[0]), std::abs(values_[1]), std::abs(values_[2])});
}

SymEigen sym_eigen(const SymForm3& q) {
    Mat3 m = q.matrix();
    Mat3 v = Mat3::identity();

    const double scale = frobenius_norm(m);
    if (scale > 0.0) {
        for (int sweep = 0; sweep < 64; ++sweep) {
            const double off = std::sqrt(2.0 * (m(0, 1) * m(0, 1) + m(0, 2) * m(0, 2) +
                                                m(1, 2) * m(1, 2)));
            if (off <= std::numeric_limits<double>::epsilon() * 1e-2 * scale) break;
            for (std::size_t p = 0; p < 2; ++p) {
                for (std::size_t r = p + 1; r < 3; ++r) {
                    const double apr = m(p, r);
                    if (apr == 0.0) continue;
                    // Rutishauser's stable rotation.
                    const double theta = (m(r, r) - m(p, p)) / (2.0 * apr);
                    const double t = std::copysign(1.0, theta) /
                                     (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                    const double c = 1.0 / std::sqrt(t * t + 1.0);
                    const double s = t * c;
                    for (std::size_t k = 0; k < 3; ++k) {
                        const double mkp = m(k, p);
                        const double mkr = m(k, r);
                        m(k, p) = c * mkp - s * mkr;
                        m(k, r) = s * mkp + c * mkr;
                    }
                    for (std::size_t k = 0; k < 3; ++k) {
                        const double mpk = m(p, k);
                        const double mrk = m(r, k);
                        m(p, k) = c * mpk - s * mrk;
                        m(r, k) = s * mpk + c * mrk;
                    }
                    for (std::size_t k = 0; k < 3; ++k) {
                        const double vkp = v(k, p);
                        const double vkr = v(k, r);
                        v(k, p) = c * vkp - s * vkr;
                        v(k, r) = s * vkp + c * vkr;
                    }
                }
            }
        }
    }

    std::array<std::size_t, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return m(i, i) > m(j, j); });
    SymEigen out{};
    for (std::size_t k = 0; k < 3; ++k) {
        const std::size_t c = order[k];
        out.values[k] = m(c, c);
        out.vectors[k] = Vec3{v(0, c), v(1, c), v(2, c)};
    }
    return out;
}

Inertia inertia(const SymForm3& q, double tol) {
    const double s = std::max(1.0, q.spectral_radius());
    Inertia out;
    for (double lambda : q.eigenvalues()) {
        if (lambda > tol * s)
            ++out.n_plus;
        else if (lambda < -tol * s)
            ++out.n_minus;
        else
            ++out.n_zero;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Matrix exponential

Mat3 expm(const Mat3& m) {
    if (!m.is_finite()) throw Error(ErrorKind::Overflow, "expm: non-finite matrix");

    // Pade(6,6) coefficients (2m-k)! m! / ((2m)! k! (m-k)!) for m = 6.
    static constexpr std::array<double, 7> c{1.0,        1.0 / 2.0,    5.0 / 44.0,
                                             1.0 / 66.0, 1.0 / 792.0,  1.0 / 15840.0,
                                             1.0 / 665280.0};
    const double nrm = one_norm(m);
    int squarings = 0;
    if (nrm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(nrm / 0.5)));

    const Mat3 x = m * std::ldexp(1.0, -squarings);
    const Mat3 x2 = x * x;
    const Mat3 x4 = x2 * x2;
    const Mat3 x6 = x4 * x2;
    const Mat3 id = Mat3::identity();

    const Mat3 u = x * (c[1] * id + c[3] * x2 + c[5] * x4);
    const Mat3 v = c[0] * id + c[2] * x2 + c[4] * x4 + c[6] * x6;

    Mat3 e = solve(v - u, v + u);
    for (int k = 0; k < squarings; ++k) e = e * e;
    return e;
}

Vec3 expm_apply(const Mat3& a, double t, const Vec3& x0) {
    if (t == 0.0) return x0;
    const Vec3 y = expm(a * t) * x0;
    if (!y.is_finite()) throw Error(ErrorKind::Overflow, "expm_apply: flow overflowed");
    return y;
}

// ---------------------------------------------------------------------------

QuadraticRoots solve_quadratic(double c2, double c1, double c0) {
    QuadraticRoots out;
    if (c2 == 0.0) {
        if (c1 == 0.0) {
            out.identically_zero = (c0 == 0.0);
            return out;
        }
        out.roots.push_back(-c0 / c1);
        return out;
    }

    const double disc = c1 * c1 - 4.0 * c2 * c0;
    const double scale = std::max(c1 * c1, std::abs(4.0 * c2 * c0));
    if (std::abs(disc) <= 1e-12 * scale) {
        out.roots.push_back(-c1 / (2.0 * c2));
        out.double_root = true;
        return out;
    }
    if (disc < 0.0) return out;

    // Avoids cancellation between -c1 and sqrt(disc).
    const double q = -0.5 * (c1 + std::copysign(std::sqrt(disc), c1));
    double r1 = q / c2;
    double r2 = (q != 0.0) ? c0 / q : -r1;
    if (r1 > r2) std::swap(r1, r2);
    out.roots = {r1, r2};
    return out;
}

}  // namespace filippov

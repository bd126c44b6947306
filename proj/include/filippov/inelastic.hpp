#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "filippov/algebra.hpp"
#include "filippov/manifolds.hpp"

namespace filippov {

/// Free entries of the companion matrix. The sphere companion leaves b21, b31
/// and b32 free; the torus companion only b21 (b31, b32 are ignored there).
struct FreeParameters {
    double b21 = 0.0;
    double b31 = 0.0;
    double b32 = 0.0;
};

/// Companion B for which (x -> Ax, x -> Bx) is inelastic over the unit sphere:
///   [ -a11, -a21-b21-a12, -a13-a31-b31 ]
///   [  b21, -a22,         -a32-b32-a23 ]
///   [  b31,  b32,         -a33         ]
Mat3 companion_sphere(const Mat3& a, double b21, double b31, double b32);

/// Companion B for the torus:
///   [ -a11, -a12-a21-b21, -a13 ]
///   [  b21, -a22,         -a23 ]
///   [ -a31, -a32,         -a33 ]
Mat3 companion_torus(const Mat3& a, double b21);

Mat3 companion(ManifoldKind kind, const Mat3& a, const FreeParameters& free);

/// A pair X(x) = Ax above the manifold, Y(x) = Bx below it, with
/// X sigma = -Y sigma on the manifold.
class InelasticPair {
public:
    InelasticPair(ManifoldKind kind, const Mat3& a, const FreeParameters& free);

    static InelasticPair sphere(const Mat3& a, double b21, double b31, double b32) {
        return InelasticPair(ManifoldKind::Sphere, a, {b21, b31, b32});
    }
    static InelasticPair torus(const Mat3& a, double b21) {
        return InelasticPair(ManifoldKind::Torus, a, {b21, 0.0, 0.0});
    }

    ManifoldKind kind() const { return kind_; }
    const Mat3& a() const { return a_; }
    const Mat3& b() const { return b_; }
    const FreeParameters& free_parameters() const { return free_; }

    /// max(1, ||A||_F, ||B||_F), used to scale zero tests.
    double scale() const;

private:
    ManifoldKind kind_;
    Mat3 a_;
    Mat3 b_;
    FreeParameters free_;
};

/// max over n sampled manifold points of |<Ax, grad sigma> + <Bx, grad sigma>|.
double verify_inelastic(const Mat3& a, const Mat3& b, ManifoldKind kind, std::size_t n,
                        std::uint64_t seed);

struct PatternMismatch {
    int row = 0;  // one-based, as in b_{row,col}
    int col = 0;
    double expected = 0.0;
    double actual = 0.0;
};

/// Reads the free parameters out of an explicit B and lists every entry that
/// deviates from the companion pattern by more than tol.
std::vector<PatternMismatch> companion_mismatches(ManifoldKind kind, const Mat3& a, const Mat3& b,
                                                  double tol);

/// Free parameters as stored in an explicit B.
FreeParameters free_parameters_of(ManifoldKind kind, const Mat3& b);

}  // namespace filippov

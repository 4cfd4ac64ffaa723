#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tridiag {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionTooSmall : Error { using Error::Error; };
struct PoleAtZ : Error { using Error::Error; };
struct BracketCountMismatch : Error { using Error::Error; };
struct DegenerateCircleRoot : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct SizeCap : Error { using Error::Error; };
struct HypothesisViolation : Error { using Error::Error; };
struct NoRootInInterval : Error { using Error::Error; };
struct ZeroVector : Error { using Error::Error; };

// ---------------------------------------------------------------------------
// Canonical problem
// ---------------------------------------------------------------------------

// Boundary data of the canonical (n+1)x(n+1) matrix A:
//   first row  (-b0, 1-b1, 0, ...),
//   interior   ( 1,   0,   1     ),
//   last row   (..., 1-cm1, -c0  ).
struct BoundaryParams {
  Complex b0{0.0, 0.0};
  Complex b1{0.0, 0.0};
  Complex cm1{0.0, 0.0};
  Complex c0{0.0, 0.0};
  int n = 2;

  bool real() const {
    return b0.imag() == 0.0 && b1.imag() == 0.0 && cm1.imag() == 0.0 &&
           c0.imag() == 0.0;
  }
};

inline BoundaryParams make_params(Complex b0, Complex b1, Complex c0,
                                  Complex cm1, int n) {
  return BoundaryParams{b0, b1, cm1, c0, n};
}

// Roots of the two monic boundary quadratics z^2 + b0 z + b1 and
// z^2 + c0 z + cm1. Their reciprocals are the roots of the auxiliary
// polynomial p, with roots at 0 standing for p's roots at infinity, so
// Q = #{|root| > 1} counts p's roots inside the unit circle.
struct RootClassification {
  std::array<Complex, 2> left_roots{};
  std::array<Complex, 2> right_roots{};
  int Q = 0;
  int w = -4;                     // winding number of g on the circle, 2Q-4
  std::vector<Complex> on_circle; // roots with ||root|-1| < tol
  bool real_params = false;

  // On-circle roots sitting at +-1 (the only kind that survives real-parameter
  // canonicalization); these cancel in g and show up as exact roots of H.
  int pm1_collisions(double tol = 1e-9) const;
};

// Scaled evaluation: value * e^{log_scale}.
struct PolyEval {
  Complex value{0.0, 0.0};
  double log_scale = 0.0;

  Complex resolve() const { return value * std::exp(log_scale); }
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

// Roots of the monic quadratic z^2 + b z + c, larger modulus first.
std::pair<Complex, Complex> quadratic_roots(Complex b, Complex c);

// Deflates b1 == 1 (detaches eigenvalue -b0) and cm1 == 1 (detaches -c0)
// until the invariant b1 != 1, cm1 != 1 holds. Each deflation shrinks n by 1.
std::pair<BoundaryParams, std::vector<Complex>> reduce_degenerate(
    const BoundaryParams& p);

RootClassification classify_roots(const BoundaryParams& p, double tol = 1e-9);

// g(z) = p(z) / (z^4 p(1/z)), evaluated in factored form.
Complex eval_g(const BoundaryParams& p, Complex z);

// H(z) = z^{2n} (b1 + b0 z + z^2)(cm1 + c0 z + z^2)
//        - (b1 z^2 + b0 z + 1)(cm1 z^2 + c0 z + 1), with |z|^{2n} absorbed
// into log_scale when it would over/underflow.
PolyEval eval_H(const BoundaryParams& p, Complex z);

// Direct (unscaled) H and H' for |z| < 1; z^{2n} underflow is harmless there.
Complex eval_H_inside(const BoundaryParams& p, Complex z);
Complex eval_H_prime_inside(const BoundaryParams& p, Complex z);

// ---------------------------------------------------------------------------
// Factor evaluations (shared by the solvers)
// ---------------------------------------------------------------------------

// Left/right boundary factors of H's z^{2n} side and their reversed-
// coefficient counterparts (the factors of p).
inline Complex left_factor(const BoundaryParams& p, Complex z) {
  return (z + p.b0) * z + p.b1;
}
inline Complex right_factor(const BoundaryParams& p, Complex z) {
  return (z + p.c0) * z + p.cm1;
}
inline Complex left_factor_rev(const BoundaryParams& p, Complex z) {
  return (p.b1 * z + p.b0) * z + 1.0;
}
inline Complex right_factor_rev(const BoundaryParams& p, Complex z) {
  return (p.cm1 * z + p.c0) * z + 1.0;
}

// z^m as unit * e^{log_mag}, |unit| = 1.
struct ScaledPow {
  Complex unit{1.0, 0.0};
  double log_mag = 0.0;
};
ScaledPow pow_scaled(Complex z, long m);

// Principal angle in (-pi, pi].
double wrap_angle(double x);

}  // namespace tridiag

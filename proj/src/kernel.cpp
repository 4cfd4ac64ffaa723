#include "tridiag/kernel.hpp"

#include <algorithm>
#include <cmath>

namespace tridiag {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double abs_or_zero(Complex z) { return std::abs(z); }

// Magnitude bound of a factored-quadratic product, used to detect genuine
// cancellation (pole hits) independently of the coefficient scale.
double factor_scale(const BoundaryParams& p, double az) {
  double left = std::abs(p.b1) + std::abs(p.b0) * az + az * az + 1.0;
  double right = std::abs(p.cm1) + std::abs(p.c0) * az + az * az + 1.0;
  return left * right;
}

}  // namespace

double wrap_angle(double x) {
  double w = std::remainder(x, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

std::pair<Complex, Complex> quadratic_roots(Complex b, Complex c) {
  if (b == 0.0 && c == 0.0) return {Complex(0.0), Complex(0.0)};
  Complex disc = b * b - 4.0 * c;
  Complex s = std::sqrt(disc);
  // Sign choice avoiding cancellation in -b - s.
  if (b.real() * s.real() + b.imag() * s.imag() < 0.0) s = -s;
  Complex q = -0.5 * (b + s);
  Complex r1, r2;
  if (q == 0.0) {  // c == 0 and b == 0 handled above; here b + s cancelled
    r1 = -b;
    r2 = Complex(0.0);
  } else {
    r1 = q;
    r2 = c / q;
  }
  if (std::abs(r2) > std::abs(r1)) std::swap(r1, r2);
  return {r1, r2};
}

std::pair<BoundaryParams, std::vector<Complex>> reduce_degenerate(
    const BoundaryParams& p) {
  BoundaryParams cur = p;
  std::vector<Complex> detached;
  bool changed = true;
  while (changed) {
    changed = false;
    if (cur.b1 == Complex(1.0)) {
      detached.push_back(-cur.b0);
      cur.b0 = 0.0;
      cur.b1 = 0.0;
      cur.n -= 1;
      changed = true;
    }
    if (cur.cm1 == Complex(1.0)) {
      detached.push_back(-cur.c0);
      cur.c0 = 0.0;
      cur.cm1 = 0.0;
      cur.n -= 1;
      changed = true;
    }
    if (cur.n < 2)
      throw DimensionTooSmall(
          "deflation drove the interior size below the minimum n = 2");
  }
  return {cur, detached};
}

int RootClassification::pm1_collisions(double tol) const {
  int count = 0;
  for (const Complex& r : on_circle) {
    if (std::abs(r - 1.0) < tol || std::abs(r + 1.0) < tol) ++count;
  }
  return count;
}

RootClassification classify_roots(const BoundaryParams& p, double tol) {
  RootClassification out;
  auto left = quadratic_roots(p.b0, p.b1);
  auto right = quadratic_roots(p.c0, p.cm1);
  out.left_roots = {left.first, left.second};
  out.right_roots = {right.first, right.second};
  out.real_params = p.real();
  int q = 0;
  for (const Complex& r :
       {left.first, left.second, right.first, right.second}) {
    double m = abs_or_zero(r);
    if (std::abs(m - 1.0) < tol) out.on_circle.push_back(r);
    if (m > 1.0) ++q;
  }
  out.Q = q;
  out.w = 2 * q - 4;
  return out;
}

Complex eval_g(const BoundaryParams& p, Complex z) {
  Complex num = left_factor_rev(p, z) * right_factor_rev(p, z);
  Complex den = left_factor(p, z) * right_factor(p, z);
  double az = std::abs(z);
  if (std::abs(den) <= 1e-14 * factor_scale(p, az))
    throw PoleAtZ("evaluation of g at a pole (|z| = " + std::to_string(az) +
                  ")");
  return num / den;
}

PolyEval eval_H(const BoundaryParams& p, Complex z) {
  Complex a = left_factor(p, z) * right_factor(p, z);
  Complex b = left_factor_rev(p, z) * right_factor_rev(p, z);
  ScaledPow s = pow_scaled(z, 2L * p.n);
  if (s.log_mag > 500.0) {
    return PolyEval{s.unit * a - b * std::exp(-s.log_mag), s.log_mag};
  }
  // exp underflows to zero harmlessly for very negative log_mag
  return PolyEval{s.unit * std::exp(s.log_mag) * a - b, 0.0};
}

Complex eval_H_inside(const BoundaryParams& p, Complex z) {
  Complex zp = std::exp(2.0 * static_cast<double>(p.n) * std::log(z));
  return zp * left_factor(p, z) * right_factor(p, z) -
         left_factor_rev(p, z) * right_factor_rev(p, z);
}

Complex eval_H_prime_inside(const BoundaryParams& p, Complex z) {
  double two_n = 2.0 * static_cast<double>(p.n);
  Complex zp = std::exp(two_n * std::log(z));
  Complex u = left_factor(p, z), v = right_factor(p, z);
  Complex uh = left_factor_rev(p, z), vh = right_factor_rev(p, z);
  Complex du = p.b0 + 2.0 * z, dv = p.c0 + 2.0 * z;
  Complex duh = 2.0 * p.b1 * z + p.b0, dvh = 2.0 * p.cm1 * z + p.c0;
  return zp * (two_n / z * u * v + du * v + u * dv) - (duh * vh + uh * dvh);
}

ScaledPow pow_scaled(Complex z, long m) {
  if (z == 0.0) throw Error("pow_scaled of zero");
  double lm = static_cast<double>(m) * std::log(std::abs(z));
  double ang = wrap_angle(static_cast<double>(m) * std::arg(z));
  return ScaledPow{std::polar(1.0, ang), lm};
}

}  // namespace tridiag

#pragma once

#include <vector>

#include "tridiag/kernel.hpp"
#include "tridiag/spectrum.hpp"

namespace tridiag {

// B = q (D A D^{-1} + d I) with D built from cumulative products of the
// alphas; entries per the generalized form:
//   B[0][0] = q(d - b0),   B[0][1]   = q (1 - b1) / alpha_1,
//   B[i][i-1] = q alpha_i, B[i][i] = q d, B[i][i+1] = q / alpha_{i+1},
//   B[n][n-1] = q alpha_n (1 - cm1), B[n][n] = q(d - c0).
struct GeneralTridiagonal {
  Complex q{1.0, 0.0};
  Complex d{0.0, 0.0};
  std::vector<Complex> alphas;  // n nonzero weights
  BoundaryParams boundary;      // boundary.n must equal alphas.size()

  void validate() const;
};

// Diagonal entries eps_i = prod_{l<i} alpha_l in log form (magnitude can grow
// exponentially in n).
struct ConjugationData {
  std::vector<double> log_mag;  // size n+1; log|eps_i|
  std::vector<double> phase;    // accumulated arg(eps_i), unwrapped
  double max_log_mag = 0.0;
  bool conditioning_warning = false;

  Complex eps(int i) const;  // may overflow for extreme alphas
};

std::pair<BoundaryParams, ConjugationData> to_canonical(
    const GeneralTridiagonal& B);

// Eigenpair of B from an eigenpair of the canonical problem: lambda maps to
// q(lambda + d), the vector to D v. Components are kept as unit-scale values
// with separate log-magnitudes.
struct MappedEigenpair {
  Complex lambda{0.0, 0.0};
  std::vector<Complex> unit;
  std::vector<double> log_mag;
  bool conditioning_warning = false;

  // Plain components; throws Error if any magnitude overflows.
  std::vector<Complex> dense() const;
};

MappedEigenpair map_eigenpair(const GeneralTridiagonal& B,
                              const ConjugationData& conj,
                              const Eigenpair& pair);

// Tridiagonal Toeplitz matrix (diagonal delta, sub sigma, super tau) in
// B-form: q = sqrt(sigma tau), d = delta/q, alpha_i = sqrt(sigma/tau).
GeneralTridiagonal toeplitz(Complex sigma, Complex tau, Complex delta, int n);

// Consensus/flocking matrix L: first row (psi, 0, ...), interior
// (sigma, 0, tau), last row (..., sigma+phi, theta). Note b1 = 1 by
// construction; reduce_degenerate detaches the eigenvalue psi.
GeneralTridiagonal flocking_matrix(Complex psi, Complex sigma, Complex tau,
                                   Complex phi, Complex theta, int n);

}  // namespace tridiag

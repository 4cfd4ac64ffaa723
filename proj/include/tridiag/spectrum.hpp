#pragma once

#include <string>
#include <vector>

#include "tridiag/kernel.hpp"
#include "tridiag/regular.hpp"
#include "tridiag/special.hpp"

namespace tridiag {

enum class EigKind { regular, special, pm2, detached };

const char* to_string(EigKind k);

struct Eigenpair {
  Complex lambda{0.0, 0.0};
  EigKind kind = EigKind::regular;
  Complex root{0.0, 0.0};  // z with lambda = z + 1/z (regular/special only)
  bool has_root = false;
  double t = -1.0;  // phase root of the reported member (regular only)
  std::vector<Complex> vector;  // optional eigenvector, unit max-modulus
  double residual = -1.0;       // ||Av - lambda v||inf / ||v||inf if vector set
};

struct Diagnostics {
  std::vector<std::string> warnings;
  std::vector<Complex> detached;  // eigenvalues removed by canonicalization
  int max_refine_iterations = 0;
  double mean_refine_iterations = 0.0;
  double brackets_ms = 0.0;
  double locate_ms = 0.0;
  double total_ms = 0.0;
};

struct SpectrumResult {
  std::vector<Eigenpair> eigenpairs;  // regular (by t), special, pm2, detached
  int Q = 0;
  int w = -4;
  int n = 0;        // canonical interior index after deflation
  int n_input = 0;  // as given; total eigenvalue count is n_input + 1
  Diagnostics diagnostics;
};

// Full pipeline: canonicalization, classification, regular and special roots,
// nearest-inverse pairing, +-2 detection, optional eigenvectors.
SpectrumResult solve_spectrum(const BoundaryParams& params,
                              const SolveOptions& opts = {});

// Closed-form test for eigenvalues +-2: h(+-1) with h = H / ((z-1)(z+1)),
// computed analytically from the factored H. Emits the exact linear-profile
// eigenvector when it fires. Expects canonical parameters.
std::vector<Eigenpair> detect_pm2(const BoundaryParams& params,
                                  double tol = 1e-8);

// Eigenvector for a root z of H (z not in {0, +-1}): components
// v_k = c+ z^k + c- z^-k from the exact nullspace direction, evaluated
// overflow-safely for |z| away from 1 and normalized to unit max-modulus.
std::vector<Complex> eigenvector(const BoundaryParams& params, Complex z);

// y = A x for the canonical matrix, assembled on demand (O(n)).
std::vector<Complex> apply_canonical(const BoundaryParams& params,
                                     const std::vector<Complex>& x);

double eigen_residual(const BoundaryParams& params, Complex lambda,
                      const std::vector<Complex>& v);

}  // namespace tridiag

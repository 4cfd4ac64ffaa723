#pragma once

#include <string>
#include <vector>

#include "tridiag/kernel.hpp"

namespace tridiag {

struct SolveOptions {
  double eps_t = 1e-14;      // bisection tolerance on phase roots
  double eps = 1e-15;        // contraction stop, scaled by max(1, |z|)
  int max_iter = 60;         // contraction iteration cap
  int fixed_iterations = 0;  // > 0: run exactly this many steps, no stop test
  long grid_n = 0;           // N; 0 means 6n, explicit values below 6n reject
  double circle_tol = 1e-9;  // unit-circle collision tolerance
  double pm1_tol = 1e-8;     // roots this close to +-1 go to the trivial factor
  int threads = 0;           // 0: hardware concurrency
  bool compute_vectors = false;
  bool refine_special = false;  // Newton-refine special roots on H
};

// A sign-change interval of the phase function k(t) = Arg(e^{2int}/g(e^{it})).
// Zero-width (t_lo == t_hi) when a sample landed exactly on a phase root.
struct Bracket {
  double t_lo = 0.0, t_hi = 0.0;
  double k_lo = 0.0, k_hi = 0.0;
};

struct RegularRoot {
  double t = 0.0;          // phase root in [0, 2pi)
  Complex z{1.0, 0.0};     // located root of H
  int iterations = 0;
  double residual = 0.0;   // |z^{2n} - g(z)|, overflow-safe
  bool is_exact = false;   // real-parameter fast path: e^{it} is itself a root
  bool converged = true;
};

struct RegularResult {
  std::vector<RegularRoot> roots;  // sorted by t ascending
  std::vector<std::string> warnings;
  int max_iterations = 0;
  double mean_iterations = 0.0;
  double brackets_ms = 0.0;
  double locate_ms = 0.0;
};

// k(t) in (-pi, pi]; throws PoleAtZ when e^{it} hits a zero or pole of g.
double phase_function(const BoundaryParams& p, double t);

// Samples k on the N-point grid (N >= 6n) and keeps the upward crossings.
// Retained count must equal 2n+4-2Q minus the +-1 circle collisions, else
// BracketCountMismatch.
std::vector<Bracket> find_brackets(const BoundaryParams& p,
                                   const RootClassification& cls,
                                   long grid_n = 0);
std::vector<Bracket> find_brackets(const BoundaryParams& p, long grid_n = 0);

double bisect_phase_root(const BoundaryParams& p, const Bracket& br,
                         double eps_t);

// Branch of the 2n-th root with inverse_branch(t_k, n, (e^{it_k})^{2n})
// = e^{it_k}.
Complex inverse_branch(double t_k, int n, Complex w);

RegularRoot contraction_refine(const BoundaryParams& p, double t_k,
                               const SolveOptions& opts);

// Full pipeline: brackets -> bisection -> refinement (skipped for real
// parameters). Roots at +-1 from on-circle factor collisions are appended as
// exact roots.
RegularResult regular_roots(const BoundaryParams& p, const SolveOptions& opts);

// |z^{2n} - g(z)|, overflow-safe; huge sentinel when z is far off the circle.
double regular_residual(const BoundaryParams& p, Complex z);

}  // namespace tridiag

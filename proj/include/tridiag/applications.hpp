#pragma once

#include <vector>

#include "tridiag/kernel.hpp"
#include "tridiag/regular.hpp"
#include "tridiag/transform.hpp"

namespace tridiag {

enum class BoundaryCondition { dirichlet, mixed };

// Finite-difference discretization of u_t = u_xx + 2K u_x on [0,1]:
// du/dt = n^2 B u. Dirichlet uses the (n-1)-dimensional interior system,
// Dirichlet-Neumann (mixed) the n-dimensional one.
struct AdvDiffSystem {
  double K = 0.0;
  int n = 0;  // grid count
  BoundaryCondition bc = BoundaryCondition::dirichlet;
  GeneralTridiagonal system;  // B itself (without the n^2 factor)
  double alpha = 1.0;         // ((1-K/n)/(1+K/n))^{1/2}
  double q = 1.0;             // (1-K^2/n^2)^{1/2}
  double d = -2.0;            // -2 (1-K^2/n^2)^{-1/2}
};

AdvDiffSystem advdiff_build(double K, int n, BoundaryCondition bc);

// Eigenvalues of n^2 B, leading (largest) first. Checks the realness and
// the < -K^2 bound whenever the hypothesis guarantees them.
std::vector<double> advdiff_spectrum(const AdvDiffSystem& sys,
                                     SolveOptions opts = {});

// Large-K leading eigenvalue of the mixed system: zeta solves
// ln(zeta)(zeta+1) = 2K(zeta-1) in (0,1); nu = -K^2 + (ln zeta / 2)^2,
// with the closed form -4K^2/(e^{2K}+1) for comparison.
struct LeadingAsymptotic {
  double zeta = 0.0;
  double nu = 0.0;
  double nu_closed_form = 0.0;
};
LeadingAsymptotic leading_eigenvalue_asymptotic(double K);

// Boundary rows that make r1, r2 the roots of one boundary factor of p.
struct FailureSpec {
  Complex r1{0.0, 0.0};
  Complex r2{0.0, 0.0};
  enum class Side { left, right, both } side = Side::left;
};

struct PbcReport {
  BoundaryParams params;
  bool region_member = false;       // r1 in the instability region
  Complex unstable_eigenvalue;      // r1 + 1/r1
  double shifted_growth = 0.0;      // Re(r1 + 1/r1) - 2
  bool deflation_note = false;      // derived b1 (or c0) equals 1
  bool oracle_checked = false;
  double oracle_distance = -1.0;    // nearest dense eigenvalue at verify_n
};

// Periodic-boundary-condition failure demonstrator: returns the derived
// parameters, region membership via Re(r1 + 1/r1) = a + a/(a^2+b^2) > 2
// (with 0 < a < 1), and optionally a dense-oracle confirmation.
PbcReport pbc_failure(const FailureSpec& spec, int verify_n = 0);

// The instability region of Fig.-style plots: 0 < a < 1 and
// |b| < sqrt(a/(2-a) - a^2).
bool failure_region_member(double a, double b);

struct RegionSample {
  double a = 0.0, b = 0.0;
  bool member = false;
};

// Rasterizes the region on an res_a x res_b grid (inclusive endpoints).
std::vector<RegionSample> failure_region_samples(double a_min, double a_max,
                                                 double b_min, double b_max,
                                                 int res_a, int res_b);

}  // namespace tridiag

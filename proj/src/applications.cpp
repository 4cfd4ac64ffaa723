#include "tridiag/applications.hpp"

#include <algorithm>
#include <cmath>

#include "tridiag/oracle.hpp"
#include "tridiag/spectrum.hpp"

namespace tridiag {

AdvDiffSystem advdiff_build(double K, int n, BoundaryCondition bc) {
  if (n < 3) throw HypothesisViolation("advection-diffusion needs n >= 3");
  if (static_cast<double>(n) <= std::abs(K))
    throw HypothesisViolation("advection-diffusion needs n > |K|");
  const int canonical = bc == BoundaryCondition::dirichlet ? n - 2 : n - 1;
  if (canonical < 2)
    throw HypothesisViolation("grid too small for the canonical reduction");

  AdvDiffSystem sys;
  sys.K = K;
  sys.n = n;
  sys.bc = bc;
  const double kn = K / static_cast<double>(n);
  sys.alpha = std::sqrt((1.0 - kn) / (1.0 + kn));
  sys.q = std::sqrt(1.0 - kn * kn);
  sys.d = -2.0 / sys.q;

  BoundaryParams bp;
  bp.n = canonical;
  if (bc == BoundaryCondition::mixed) bp.cm1 = 1.0 - 2.0 / (1.0 - kn);

  sys.system.q = sys.q;
  sys.system.d = sys.d;
  sys.system.alphas.assign(static_cast<std::size_t>(canonical), sys.alpha);
  sys.system.boundary = bp;
  return sys;
}

std::vector<double> advdiff_spectrum(const AdvDiffSystem& sys,
                                     SolveOptions opts) {
  opts.refine_special = true;  // the mixed K>0 leading value needs the H-root
  SpectrumResult res = solve_spectrum(sys.system.boundary, opts);
  const double n2 = static_cast<double>(sys.n) * static_cast<double>(sys.n);
  std::vector<double> nus;
  nus.reserve(res.eigenpairs.size());
  for (const Eigenpair& e : res.eigenpairs) {
    if (std::abs(e.lambda.imag()) > 1e-9 * std::max(1.0, std::abs(e.lambda)))
      throw Error("advection-diffusion eigenvalue came out non-real");
    nus.push_back(n2 * sys.q * (e.lambda.real() + sys.d));
  }
  std::sort(nus.begin(), nus.end(), std::greater<double>());

  const bool bounded = sys.bc == BoundaryCondition::dirichlet || sys.K <= 0.0;
  if (bounded) {
    const double bound = -sys.K * sys.K + 1e-6;
    for (double nu : nus)
      if (!(nu < bound))
        throw Error("eigenvalue " + std::to_string(nu) +
                    " violates the < -K^2 bound");
  }
  return nus;
}

LeadingAsymptotic leading_eigenvalue_asymptotic(double K) {
  if (!(K > 0.0))
    throw HypothesisViolation("leading-eigenvalue asymptotic needs K > 0");
  auto phi = [K](double z) { return std::log(z) * (z + 1.0) - 2.0 * K * (z - 1.0); };
  double lo = std::max(std::exp(-4.0 * K), 1e-300);
  double hi = 1.0 - 1e-12;
  double flo = phi(lo), fhi = phi(hi);
  if (!(flo < 0.0 && fhi > 0.0))
    throw NoRootInInterval(
        "no zeta root in (0,1); the large-K expansion does not apply");
  double z = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    double f = phi(z);
    if (f < 0.0)
      lo = z;
    else
      hi = z;
    double dphi = (z + 1.0) / z + std::log(z) - 2.0 * K;
    double step = dphi != 0.0 ? f / dphi : 0.0;
    double znext = z - step;
    if (!(znext > lo && znext < hi)) znext = 0.5 * (lo + hi);
    if (std::abs(znext - z) <= 1e-16 * z) {
      z = znext;
      break;
    }
    z = znext;
  }
  LeadingAsymptotic out;
  out.zeta = z;
  double half_log = 0.5 * std::log(z);
  out.nu = -K * K + half_log * half_log;
  // -4K^2 / (e^{2K} + 1), written overflow-safe
  double e = std::exp(-2.0 * K);
  out.nu_closed_form = -4.0 * K * K * e / (1.0 + e);
  return out;
}

bool failure_region_member(double a, double b) {
  if (!(a > 0.0 && a < 1.0)) return false;
  return b * b * (2.0 - a) < a * (1.0 - a) * (1.0 - a);
}

PbcReport pbc_failure(const FailureSpec& spec, int verify_n) {
  if (spec.r1 == 0.0 || spec.r2 == 0.0)
    throw HypothesisViolation("pbc failure spec needs r1, r2 != 0");
  const Complex sum = -1.0 / spec.r1 - 1.0 / spec.r2;
  const Complex prod = 1.0 / (spec.r1 * spec.r2);

  PbcReport rep;
  rep.params.n = verify_n > 0 ? verify_n : 100;
  using Side = FailureSpec::Side;
  if (spec.side == Side::left || spec.side == Side::both) {
    rep.params.b0 = sum;
    rep.params.b1 = prod;
  }
  if (spec.side == Side::right || spec.side == Side::both) {
    // r1, r2 are the roots of cm1 z^2 + c0 z + 1
    rep.params.cm1 = prod;
    rep.params.c0 = sum;
  }
  rep.deflation_note =
      rep.params.b1 == Complex(1.0) || rep.params.cm1 == Complex(1.0);

  const double a = spec.r1.real(), b = spec.r1.imag();
  rep.region_member = a > 0.0 && a < 1.0 && a + a / (a * a + b * b) > 2.0;
  rep.unstable_eigenvalue = spec.r1 + 1.0 / spec.r1;
  rep.shifted_growth = rep.unstable_eigenvalue.real() - 2.0;

  if (verify_n > 0) {
    BoundaryParams p = rep.params;
    p.n = verify_n;
    auto dense = oracle::assemble_dense(p);
    auto eig = oracle::dense_eigenvalues(std::move(dense));
    double best = -1.0;
    for (const Complex& v : eig.values) {
      double d = std::abs(v - rep.unstable_eigenvalue);
      if (best < 0.0 || d < best) best = d;
    }
    rep.oracle_checked = true;
    rep.oracle_distance = best;
  }
  return rep;
}

std::vector<RegionSample> failure_region_samples(double a_min, double a_max,
                                                 double b_min, double b_max,
                                                 int res_a, int res_b) {
  if (res_a < 2 || res_b < 2)
    throw HypothesisViolation("region grid resolution must be >= 2");
  std::vector<RegionSample> out;
  out.reserve(static_cast<std::size_t>(res_a) * res_b);
  for (int i = 0; i < res_a; ++i) {
    double a = a_min + (a_max - a_min) * i / (res_a - 1);
    for (int j = 0; j < res_b; ++j) {
      double b = b_min + (b_max - b_min) * j / (res_b - 1);
      out.push_back(RegionSample{a, b, failure_region_member(a, b)});
    }
  }
  return out;
}

}  // namespace tridiag

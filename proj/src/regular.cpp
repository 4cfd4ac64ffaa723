#include "tridiag/regular.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "tridiag/detail/parallel.hpp"

namespace tridiag {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

double phase_function(const BoundaryParams& p, double t) {
  Complex z = std::polar(1.0, t);
  Complex nu1 = left_factor_rev(p, z), nu2 = right_factor_rev(p, z);
  Complex de1 = left_factor(p, z), de2 = right_factor(p, z);
  double lscale = std::abs(p.b1) + std::abs(p.b0) + 2.0;
  double rscale = std::abs(p.cm1) + std::abs(p.c0) + 2.0;
  double floor = 1e-14 * lscale * rscale;
  if (std::abs(de1) * std::abs(de2) <= floor ||
      std::abs(nu1) * std::abs(nu2) <= floor)
    throw PoleAtZ("zero or pole of g on the unit circle near t = " +
                  std::to_string(t));
  double arg_g =
      std::arg(nu1) + std::arg(nu2) - std::arg(de1) - std::arg(de2);
  return wrap_angle(2.0 * static_cast<double>(p.n) * t - arg_g);
}

std::vector<Bracket> find_brackets(const BoundaryParams& p,
                                   const RootClassification& cls,
                                   long grid_n) {
  const int n = p.n;
  if (n < 2) throw DimensionTooSmall("bracket scan requires n >= 2");
  const long N = grid_n == 0 ? 6L * n : grid_n;
  if (N < 6L * n)
    throw std::invalid_argument("bracket grid must satisfy N >= 6n");
  if (!cls.real_params && !cls.on_circle.empty())
    throw DegenerateCircleRoot(
        "g has zeros or poles on the unit circle; complex-parameter "
        "degeneracy");
  const long expected = 2L * n + 4 - 2L * cls.Q - cls.pm1_collisions();

  const double step = 2.0 * kPi / static_cast<double>(N);
  // Evaluation noise of k scales with 2n|t|eps; samples inside this band are
  // phase roots hit exactly by the grid (snapped so neighbouring intervals
  // cannot double-count them).
  const double snap_tol = (2.0 * n + 4.0) * 2.0 * kPi * 32.0 *
                          std::numeric_limits<double>::epsilon();
  std::vector<double> ts(N), ks(N);
  for (long l = 0; l < N; ++l) {
    double t = 2.0 * kPi * static_cast<double>(l) / static_cast<double>(N);
    double k;
    try {
      k = phase_function(p, t);
    } catch (const PoleAtZ&) {
      t += 0.25 * step;
      try {
        k = phase_function(p, t);
      } catch (const PoleAtZ&) {
        throw DegenerateCircleRoot(
            "sampling grid hit a zero/pole of g twice after perturbation");
      }
    }
    if (std::abs(k) <= snap_tol) k = 0.0;
    ts[l] = t;
    ks[l] = k;
  }

  std::vector<Bracket> out;
  out.reserve(static_cast<std::size_t>(std::max(expected, 0L)));
  for (long l = 0; l < N; ++l) {
    double t_lo = ts[l], k_lo = ks[l];
    double t_hi = (l + 1 < N) ? ts[l + 1] : 2.0 * kPi;
    double k_hi = (l + 1 < N) ? ks[l + 1] : ks[0];
    if (k_lo == 0.0) {
      // sample is a phase root to machine precision
      out.push_back(Bracket{t_lo, t_lo, 0.0, 0.0});
      continue;
    }
    // k is increasing mod 2pi for n > CD/2, so an upward crossing is a phase
    // root and a downward sign change is the 2pi wrap of k.
    if (k_lo < 0.0 && k_hi > 0.0 && k_hi - k_lo < kPi)
      out.push_back(Bracket{t_lo, t_hi, k_lo, k_hi});
  }

  if (static_cast<long>(out.size()) != expected) {
    std::ostringstream msg;
    msg << "bracket count mismatch: found " << out.size() << ", expected "
        << expected << " (n = " << n << ", Q = " << cls.Q << ", N = " << N
        << "); n too small or parameters near a circle degeneracy";
    throw BracketCountMismatch(msg.str());
  }
  return out;
}

std::vector<Bracket> find_brackets(const BoundaryParams& p, long grid_n) {
  return find_brackets(p, classify_roots(p), grid_n);
}

double bisect_phase_root(const BoundaryParams& p, const Bracket& br,
                         double eps_t) {
  if (br.t_lo == br.t_hi) return br.t_lo;
  double lo = br.t_lo, hi = br.t_hi;
  double k_lo = br.k_lo, k_hi = br.k_hi;
  int q = 0;
  if (hi - lo > eps_t)
    q = static_cast<int>(std::ceil(std::log2((hi - lo) / eps_t)));
  q = std::clamp(q, 0, 64);
  for (int it = 0; it < q && hi - lo > eps_t; ++it) {
    double mid = 0.5 * (lo + hi);
    double km;
    try {
      km = phase_function(p, mid);
    } catch (const PoleAtZ&) {
      mid += (hi - lo) * 9.5367431640625e-7;
      try {
        km = phase_function(p, mid);
      } catch (const PoleAtZ&) {
        throw DegenerateCircleRoot("pole of g inside a retained bracket");
      }
    }
    if (km == 0.0) return mid;
    if (km < 0.0) {
      lo = mid;
      k_lo = km;
    } else {
      hi = mid;
      k_hi = km;
    }
  }
  // secant step on the final bracket
  double denom = k_hi - k_lo;
  double t = denom != 0.0 ? (lo * k_hi - hi * k_lo) / denom : 0.5 * (lo + hi);
  if (!(t >= lo && t <= hi)) t = 0.5 * (lo + hi);
  return t;
}

Complex inverse_branch(double t_k, int n, Complex w) {
  double r = std::abs(w);
  if (r == 0.0) throw Error("inverse_branch of zero");
  double theta = std::arg(w);
  double two_n = 2.0 * static_cast<double>(n);
  double m = std::ceil((two_n * t_k - theta - kPi) / (2.0 * kPi));
  double ang = (theta + 2.0 * kPi * m) / two_n;
  return std::polar(std::pow(r, 1.0 / two_n), ang);
}

double regular_residual(const BoundaryParams& p, Complex z) {
  Complex g;
  try {
    g = eval_g(p, z);
  } catch (const PoleAtZ&) {
    return 1e300;
  }
  ScaledPow s = pow_scaled(z, 2L * p.n);
  if (s.log_mag > 500.0) return 1e300;
  return std::abs(s.unit * std::exp(s.log_mag) - g);
}

RegularRoot contraction_refine(const BoundaryParams& p, double t_k,
                               const SolveOptions& opts) {
  RegularRoot out;
  out.t = t_k;
  out.z = std::polar(1.0, t_k);
  if (p.real() && opts.fixed_iterations == 0) {
    out.is_exact = true;
    out.residual = regular_residual(p, out.z);
    return out;
  }
  const bool fixed = opts.fixed_iterations > 0;
  const int cap = fixed ? opts.fixed_iterations : opts.max_iter;
  out.converged = fixed;
  Complex z = out.z;
  for (int i = 1; i <= cap; ++i) {
    Complex gz;
    try {
      gz = eval_g(p, z);
    } catch (const PoleAtZ&) {
      out.converged = false;
      break;
    }
    Complex next = inverse_branch(t_k, p.n, gz);
    double dz = std::abs(next - z);
    z = next;
    out.iterations = i;
    if (!fixed && dz < opts.eps * std::max(1.0, std::abs(z))) {
      out.converged = true;
      break;
    }
  }
  out.z = z;
  out.residual = regular_residual(p, z);
  return out;
}

RegularResult regular_roots(const BoundaryParams& p,
                            const SolveOptions& opts) {
  RegularResult res;
  RootClassification cls = classify_roots(p, opts.circle_tol);
  if (!cls.real_params && !cls.on_circle.empty())
    throw DegenerateCircleRoot(
        "complex parameters with quadratic roots on the unit circle");
  if (cls.real_params && !cls.on_circle.empty())
    res.warnings.push_back(
        "unit-circle collision in the boundary quadratics (real parameters); "
        "proceeding via exact cancellation");

  auto t0 = std::chrono::steady_clock::now();
  std::vector<Bracket> brackets = find_brackets(p, cls, opts.grid_n);
  res.brackets_ms = ms_since(t0);

  auto t1 = std::chrono::steady_clock::now();
  const bool real_fast = p.real() && opts.fixed_iterations == 0;
  std::vector<RegularRoot> roots(brackets.size());
  detail::parallel_for(brackets.size(), opts.threads, [&](std::size_t i) {
    double t = bisect_phase_root(p, brackets[i], opts.eps_t);
    if (real_fast) {
      RegularRoot r;
      r.t = t;
      r.z = std::polar(1.0, t);
      r.is_exact = true;
      r.residual = regular_residual(p, r.z);
      roots[i] = r;
    } else {
      roots[i] = contraction_refine(p, t, opts);
    }
  });
  res.locate_ms = ms_since(t1);

  // On-circle collisions at +-1 cancel in g and are exact roots of H.
  for (const Complex& r : cls.on_circle) {
    if (std::abs(r - 1.0) < 1e-9)
      roots.push_back(RegularRoot{0.0, Complex(1.0), 0, 0.0, true, true});
    else if (std::abs(r + 1.0) < 1e-9)
      roots.push_back(RegularRoot{kPi, Complex(-1.0), 0, 0.0, true, true});
  }

  std::sort(roots.begin(), roots.end(),
            [](const RegularRoot& a, const RegularRoot& b) { return a.t < b.t; });

  int stalled = 0, off_circle = 0;
  long iter_sum = 0;
  for (const RegularRoot& r : roots) {
    if (!r.converged) ++stalled;
    if (std::abs(std::abs(r.z) - 1.0) >= 0.5) ++off_circle;
    res.max_iterations = std::max(res.max_iterations, r.iterations);
    iter_sum += r.iterations;
  }
  if (stalled > 0)
    res.warnings.push_back(std::to_string(stalled) +
                           " root(s) hit the contraction iteration cap");
  if (off_circle > 0)
    res.warnings.push_back(std::to_string(off_circle) +
                           " root(s) strayed off the unit-circle band");
  res.mean_iterations =
      roots.empty() ? 0.0
                    : static_cast<double>(iter_sum) /
                          static_cast<double>(roots.size());
  res.roots = std::move(roots);
  return res;
}

}  // namespace tridiag

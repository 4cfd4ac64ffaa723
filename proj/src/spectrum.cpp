#include "tridiag/spectrum.hpp"

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

void normalize_max(std::vector<Complex>& v) {
  double mx = 0.0;
  for (const Complex& c : v) mx = std::max(mx, std::abs(c));
  if (mx == 0.0) throw ZeroVector("eigenvector collapsed to zero");
  for (Complex& c : v) c /= mx;
}

// Greedy nearest-inverse pairing of near-circle roots; returns index pairs.
std::vector<std::pair<int, int>> pair_roots(
    const std::vector<RegularRoot>& roots) {
  const int m = static_cast<int>(roots.size());
  if (m % 2 != 0)
    throw Error("internal: odd number of non-trivial regular roots (" +
                std::to_string(m) + ")");
  struct Cand {
    double d;
    int i, j;
  };
  std::vector<Cand> cands;
  cands.reserve(static_cast<std::size_t>(m) * 9);
  std::vector<double> ts(m);
  for (int i = 0; i < m; ++i) ts[i] = roots[i].t;
  for (int i = 0; i < m; ++i) {
    double target = 2.0 * kPi - roots[i].t;
    int lb = static_cast<int>(
        std::lower_bound(ts.begin(), ts.end(), target) - ts.begin());
    for (int j = lb - 4; j <= lb + 4; ++j) {
      if (j < 0 || j >= m || j == i) continue;
      Complex inv = 1.0 / roots[i].z;
      double d = std::abs(roots[j].z - inv) +
                 std::abs(roots[i].z - 1.0 / roots[j].z);
      cands.push_back(Cand{d, std::min(i, j), std::max(i, j)});
    }
  }
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    if (a.d != b.d) return a.d < b.d;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });
  std::vector<bool> used(m, false);
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(m / 2);
  for (const Cand& c : cands) {
    if (used[c.i] || used[c.j]) continue;
    used[c.i] = used[c.j] = true;
    pairs.emplace_back(c.i, c.j);
  }
  if (static_cast<int>(pairs.size()) * 2 != m)
    throw Error("internal: nearest-inverse pairing left unmatched roots");
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

}  // namespace

const char* to_string(EigKind k) {
  switch (k) {
    case EigKind::regular: return "regular";
    case EigKind::special: return "special";
    case EigKind::pm2: return "pm2";
    case EigKind::detached: return "detached";
  }
  return "unknown";
}

std::vector<Complex> apply_canonical(const BoundaryParams& p,
                                     const std::vector<Complex>& x) {
  const int n = p.n;
  if (static_cast<int>(x.size()) != n + 1)
    throw LengthMismatch("apply_canonical: vector length must be n+1");
  std::vector<Complex> y(n + 1);
  y[0] = -p.b0 * x[0] + (1.0 - p.b1) * x[1];
  for (int k = 1; k < n; ++k) y[k] = x[k - 1] + x[k + 1];
  y[n] = (1.0 - p.cm1) * x[n - 1] - p.c0 * x[n];
  return y;
}

double eigen_residual(const BoundaryParams& p, Complex lambda,
                      const std::vector<Complex>& v) {
  std::vector<Complex> av = apply_canonical(p, v);
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    num = std::max(num, std::abs(av[k] - lambda * v[k]));
    den = std::max(den, std::abs(v[k]));
  }
  if (den == 0.0) throw ZeroVector("residual of a zero vector");
  return num / den;
}

std::vector<Complex> eigenvector(const BoundaryParams& p, Complex z) {
  const int n = p.n;
  if (z == 0.0 || std::abs(z - 1.0) < 1e-12 || std::abs(z + 1.0) < 1e-12)
    throw Error("eigenvector undefined at z in {0, +1, -1}");
  if (std::abs(z) > 1.0) z = 1.0 / z;  // same eigenspace, inside-circle form
  const double az = std::abs(z);
  std::vector<Complex> v(static_cast<std::size_t>(n) + 1);
  const Complex lz = std::log(z);

  // The nullspace direction is (c+, c-) = (u(z), -uh(z)) up to scale, but at
  // a special root the reversed factor of its own side vanishes and a direct
  // evaluation is pure roundoff, amplified by z^{-n}. Route around it with
  // the H(z) = 0 identity and keep every exponent nonnegative; both forms
  // reduce to the direct pair near the circle.
  Complex u = left_factor(p, z), w = right_factor(p, z);
  Complex uh = left_factor_rev(p, z), wh = right_factor_rev(p, z);
  double left_scale = std::abs(p.b1) * az * az + std::abs(p.b0) * az + 1.0;
  double right_scale = std::abs(p.cm1) * az * az + std::abs(p.c0) * az + 1.0;
  double rel_u = std::abs(uh) / left_scale;
  double rel_v = std::abs(wh) / right_scale;
  if (std::max(rel_u, rel_v) < 1e-10)
    throw ZeroVector("both boundary factors vanish at z; defective input");
  if (rel_u <= rel_v) {
    // left-side root: v_k = u z^k - (u w / wh) z^{2n-k}
    Complex c2 = u * w / wh;
    for (int k = 0; k <= n; ++k)
      v[k] = u * std::exp(double(k) * lz) -
             c2 * std::exp(double(2 * n - k) * lz);
  } else {
    // right-side root, localized at the right edge: z^n (u z^k - uh z^{-k})
    for (int k = 0; k <= n; ++k)
      v[k] = u * std::exp(double(n + k) * lz) -
             uh * std::exp(double(n - k) * lz);
  }
  normalize_max(v);
  return v;
}

std::vector<Eigenpair> detect_pm2(const BoundaryParams& p, double tol) {
  std::vector<Eigenpair> out;
  const double n = static_cast<double>(p.n);
  double ab0 = std::abs(p.b0), ab1 = std::abs(p.b1);
  double ac0 = std::abs(p.c0), acm = std::abs(p.cm1);
  double us = 1.0 + ab0 + ab1, vs = 1.0 + ac0 + acm;
  double scale = n * us * vs + (1.0 + ab1) * vs + (1.0 + acm) * us;

  struct Case {
    double r;
    Complex U, V;
  };
  Case cases[2] = {
      {2.0, 1.0 + p.b0 + p.b1, 1.0 + p.c0 + p.cm1},
      {-2.0, 1.0 - p.b0 + p.b1, 1.0 - p.c0 + p.cm1},
  };
  for (const Case& c : cases) {
    Complex h = n * c.U * c.V + (1.0 - p.b1) * c.V + (1.0 - p.cm1) * c.U;
    if (std::abs(h) >= tol * std::max(1.0, scale)) continue;
    double x = c.r / 2.0;  // +-1, the doubled characteristic root
    Complex a = (1.0 - p.b1) * x;
    Complex slope = (c.r + p.b0) - a;
    std::vector<Complex> v(static_cast<std::size_t>(p.n) + 1);
    double sign = 1.0;
    for (int k = 0; k <= p.n; ++k) {
      v[k] = sign * (a + slope * double(k));
      sign *= x;
    }
    normalize_max(v);
    Eigenpair pair;
    pair.lambda = Complex(c.r, 0.0);
    pair.kind = EigKind::pm2;
    pair.vector = v;
    pair.residual = eigen_residual(p, pair.lambda, v);
    out.push_back(std::move(pair));
  }
  return out;
}

SpectrumResult solve_spectrum(const BoundaryParams& input,
                              const SolveOptions& opts) {
  auto t_start = std::chrono::steady_clock::now();
  SpectrumResult res;
  res.n_input = input.n;

  auto [p, detached] = reduce_degenerate(input);
  res.n = p.n;
  res.diagnostics.detached = detached;
  if (!detached.empty())
    res.diagnostics.warnings.push_back(
        std::to_string(detached.size()) +
        " eigenvalue(s) detached by boundary deflation; vectors refer to the "
        "canonical problem");

  RootClassification cls = classify_roots(p, opts.circle_tol);
  res.Q = cls.Q;
  res.w = cls.w;

  std::vector<Eigenpair> pm2 = detect_pm2(p);
  RegularResult reg = regular_roots(p, opts);
  for (auto& wmsg : reg.warnings) res.diagnostics.warnings.push_back(wmsg);
  res.diagnostics.max_refine_iterations = reg.max_iterations;
  res.diagnostics.mean_refine_iterations = reg.mean_iterations;
  res.diagnostics.brackets_ms = reg.brackets_ms;
  res.diagnostics.locate_ms = reg.locate_ms;

  // H always vanishes at +-1; those roots carry the trivial factor.
  std::vector<RegularRoot> kept;
  kept.reserve(reg.roots.size());
  int trivial = 0;
  for (const RegularRoot& r : reg.roots) {
    if (std::abs(r.z - 1.0) < opts.pm1_tol ||
        std::abs(r.z + 1.0) < opts.pm1_tol) {
      ++trivial;
      continue;
    }
    kept.push_back(r);
  }
  if (trivial != 2)
    res.diagnostics.warnings.push_back(
        "unexpected number of roots at +-1: " + std::to_string(trivial));

  const bool realp = p.real();
  std::vector<Eigenpair> eigenpairs;
  eigenpairs.reserve(static_cast<std::size_t>(input.n) + 1);
  for (const auto& [i, j] : pair_roots(kept)) {
    const RegularRoot& a = kept[i];
    const RegularRoot& b = kept[j];
    const RegularRoot& sel = (a.t <= kPi) ? a : (b.t <= kPi ? b : a);
    Eigenpair e;
    e.kind = EigKind::regular;
    e.root = sel.z;
    e.has_root = true;
    e.t = sel.t;
    e.lambda = realp && sel.is_exact ? Complex(2.0 * std::cos(sel.t), 0.0)
                                     : sel.z + 1.0 / sel.z;
    eigenpairs.push_back(std::move(e));
  }
  std::sort(eigenpairs.begin(), eigenpairs.end(),
            [](const Eigenpair& a, const Eigenpair& b) { return a.t < b.t; });

  std::vector<SpecialRoot> specials = special_roots(cls);
  if (opts.refine_special)
    for (SpecialRoot& s : specials) {
      SpecialRoot refined = refine_on_H(p, s.y);
      refined.multiplicity = s.multiplicity;
      s = refined;
    }
  for (const SpecialRoot& s : specials) {
    // closed-form correction scale |y|^{2n}; large values mean n is too
    // small for the exponential accuracy of s = y + 1/y
    double est = std::pow(std::abs(s.y), 2.0 * p.n);
    if (est > 1e-9 && !s.refined)
      res.diagnostics.warnings.push_back(
          "special eigenvalue correction ~" + std::to_string(est) +
          " is not negligible at this n; enable refine_special or validate "
          "against the dense oracle");
  }
  for (const SpecialRoot& s : specials) {
    for (int m = 0; m < s.multiplicity; ++m) {
      Eigenpair e;
      e.kind = EigKind::special;
      e.root = s.y;
      e.has_root = true;
      e.lambda = s.y + 1.0 / s.y;
      eigenpairs.push_back(std::move(e));
    }
  }

  for (Eigenpair& e : pm2) eigenpairs.push_back(std::move(e));
  for (const Complex& d : detached) {
    Eigenpair e;
    e.kind = EigKind::detached;
    e.lambda = d;
    eigenpairs.push_back(std::move(e));
  }

  if (static_cast<int>(eigenpairs.size()) != input.n + 1) {
    std::ostringstream msg;
    msg << "eigenvalue count " << eigenpairs.size() << " != n+1 = "
        << input.n + 1 << " (Q = " << cls.Q << ", detached = "
        << detached.size() << ", pm2 = " << pm2.size() << ")";
    throw Error(msg.str());
  }

  if (opts.compute_vectors) {
    detail::parallel_for(eigenpairs.size(), opts.threads, [&](std::size_t i) {
      Eigenpair& e = eigenpairs[i];
      if (!e.has_root) return;  // pm2 carries its vector; detached has none
      e.vector = eigenvector(p, e.root);
      e.residual = eigen_residual(p, e.lambda, e.vector);
    });
  }

  res.eigenpairs = std::move(eigenpairs);
  res.diagnostics.total_ms = ms_since(t_start);
  return res;
}

}  // namespace tridiag

#include <doctest.h>

#include <algorithm>
#include <random>

#include "support/draws.hpp"
#include "tridiag/regular.hpp"

using namespace tridiag;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

TEST_CASE("phase function at the free-free fixed points") {
  BoundaryParams p;
  p.n = 4;
  CHECK(std::abs(phase_function(p, 0.0)) < 1e-12);
  // g = z^-4, so k(t) = Arg(e^{i(2n+4)t}); t = 2pi/12 is a phase root
  CHECK(std::abs(phase_function(p, 2.0 * kPi / 12.0)) < 1e-12);
}

TEST_CASE("phase function matches a direct evaluation") {
  BoundaryParams p;
  p.b0 = -1.5;
  p.b1 = -1.0;
  p.n = 8;
  double t = 1.0;
  Complex z = std::polar(1.0, t);
  double direct = std::arg(std::polar(1.0, wrap_angle(16.0 * t)) / eval_g(p, z));
  CHECK(std::abs(wrap_angle(phase_function(p, t) - direct)) < 1e-12);
}

TEST_CASE("bracket counts") {
  BoundaryParams p;
  p.n = 8;
  auto br = find_brackets(p);
  CHECK(br.size() == 20);  // 2n+4

  BoundaryParams q;
  q.b0 = -1.5;
  q.b1 = -1.0;
  q.n = 50;
  CHECK(find_brackets(q).size() == 102);  // 2n+4-2Q with Q=1

  CHECK_THROWS_AS(find_brackets(p, 5L * p.n), std::invalid_argument);
}

TEST_CASE("brackets for the on-circle mixed K=0 case") {
  BoundaryParams p;
  p.cm1 = -1.0;
  p.n = 9;
  // two +-1 collisions: 2n+4-2Q-2 = 2n+2 brackets
  CHECK(find_brackets(p).size() == 2 * 9 + 2);
}

TEST_CASE("bisection hits known phase roots") {
  BoundaryParams p;
  p.n = 8;
  auto brackets = find_brackets(p);
  // roots of e^{i 20 t} = 1 at t = 2 pi k / 20
  std::vector<double> roots;
  for (const Bracket& b : brackets)
    roots.push_back(bisect_phase_root(p, b, 1e-14));
  std::sort(roots.begin(), roots.end());
  for (std::size_t k = 0; k < roots.size(); ++k)
    CHECK(std::abs(roots[k] - 2.0 * kPi * k / 20.0) < 1e-12);
}

TEST_CASE("bisection on the Dirichlet-Neumann K=0 reduction") {
  // c_{-1} = -1 at paper-index N: phase roots t_k = (2k-1) pi / (2N+2)
  BoundaryParams p;
  p.cm1 = -1.0;
  p.n = 9;
  auto brackets = find_brackets(p);
  std::vector<double> roots;
  for (const Bracket& b : brackets)
    roots.push_back(bisect_phase_root(p, b, 1e-14));
  std::sort(roots.begin(), roots.end());
  CHECK(std::abs(roots.front() - kPi / (2.0 * p.n + 2.0)) < 1e-12);
}

TEST_CASE("bisected roots satisfy the Lipschitz residual bound") {
  std::mt19937 rng(31);
  auto p = testsupport::random_params(rng, 50, true);
  for (const Bracket& b : find_brackets(p)) {
    double t = bisect_phase_root(p, b, 1e-14);
    CHECK(std::abs(phase_function(p, t)) < 2.0 * kPi * p.n * 1e-14 + 1e-11);
  }
}

TEST_CASE("inverse branch selection") {
  // t_k = pi/4, n = 8, w = 1 (theta = 0): m = 2, result e^{i pi/4}
  Complex r = inverse_branch(kPi / 4.0, 8, Complex(1.0));
  CHECK(std::abs(r - std::polar(1.0, kPi / 4.0)) < 1e-15);

  CHECK(std::abs(inverse_branch(0.0, 5, Complex(1.0)) - 1.0) < 1e-15);

  // branch-consistency identity at random angles
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
  for (int i = 0; i < 100; ++i) {
    double t = u(rng);
    int n = 3 + static_cast<int>(u(rng) * 20.0);
    Complex w = pow_scaled(std::polar(1.0, t), 2L * n).unit;
    CHECK(std::abs(inverse_branch(t, n, w) - std::polar(1.0, t)) < 1e-13);
  }
}

TEST_CASE("contraction refinement: real fast path is exact") {
  BoundaryParams p;
  p.b0 = 0.4;
  p.b1 = -0.3;
  p.n = 30;
  SolveOptions opts;
  RegularRoot r = contraction_refine(p, 0.7, opts);
  CHECK(r.is_exact);
  CHECK(r.iterations == 0);
  CHECK(r.z == std::polar(1.0, 0.7));
}

TEST_CASE("contraction iterates shrink monotonically") {
  std::mt19937 rng(32);
  auto p = testsupport::random_params(rng, 60, true);
  auto brackets = find_brackets(p);
  double t = bisect_phase_root(p, brackets[brackets.size() / 3], 1e-14);
  Complex z = std::polar(1.0, t);
  double prev = 1e300;
  for (int i = 0; i < 8; ++i) {
    Complex next = inverse_branch(t, p.n, eval_g(p, z));
    double dz = std::abs(next - z);
    if (dz < 1e-13) break;  // roundoff plateau
    CHECK(dz < prev);
    prev = dz;
    z = next;
  }
}

TEST_CASE("regular roots: free-free n=4 gives the 12th roots of unity") {
  BoundaryParams p;
  p.n = 4;
  SolveOptions opts;
  auto res = regular_roots(p, opts);
  REQUIRE(res.roots.size() == 12);
  for (std::size_t k = 0; k < 12; ++k) {
    CHECK(std::abs(res.roots[k].t - 2.0 * kPi * k / 12.0) < 1e-12);
    CHECK(res.roots[k].is_exact);
  }
}

TEST_CASE("regular roots: real parameters stay on the circle") {
  BoundaryParams p;
  p.b0 = 1.0;
  p.b1 = 0.5;
  p.c0 = -0.2;
  p.cm1 = 0.3;
  p.n = 100;
  SolveOptions opts;
  auto res = regular_roots(p, opts);
  CHECK(res.warnings.empty());
  for (const RegularRoot& r : res.roots) {
    CHECK(std::abs(std::abs(r.z) - 1.0) < 1e-15);
    CHECK(r.residual < 1e-12);
  }
}

TEST_CASE("regular roots: complex parameters converge with small residuals") {
  std::mt19937 rng(33);
  auto p = testsupport::random_params(rng, 80, true);
  SolveOptions opts;
  auto res = regular_roots(p, opts);
  CHECK(res.roots.size() == 2 * 80 + 4 - 2 * classify_roots(p).Q);
  for (const RegularRoot& r : res.roots) {
    CHECK(r.converged);
    CHECK(r.residual < 1e-10);
    CHECK(std::abs(std::abs(r.z) - 1.0) < 0.5);
  }
  // output sorted by t
  CHECK(std::is_sorted(res.roots.begin(), res.roots.end(),
                       [](const RegularRoot& a, const RegularRoot& b) {
                         return a.t < b.t;
                       }));
}

TEST_CASE("phase-root spacing bounds") {
  std::mt19937 rng(34);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 40 + 10 * trial;
    auto p = testsupport::random_params(rng, n, trial % 2 == 0);
    SolveOptions opts;
    auto res = regular_roots(p, opts);
    for (std::size_t i = 1; i < res.roots.size(); ++i) {
      double dt = res.roots[i].t - res.roots[i - 1].t;
      CHECK(dt > kPi / (2.0 * n));
      CHECK(dt < 8.0 * kPi / n);
    }
  }
}

TEST_CASE("real-parameter root multiset is conjugate-closed") {
  std::mt19937 rng(35);
  auto p = testsupport::random_params(rng, 40, false);
  SolveOptions opts;
  auto res = regular_roots(p, opts);
  for (const RegularRoot& r : res.roots) {
    Complex want = std::conj(r.z);
    double best = 1e300;
    for (const RegularRoot& s : res.roots)
      best = std::min(best, std::abs(s.z - want));
    CHECK(best < 1e-12);
  }
}

TEST_CASE("determinism across thread counts") {
  std::mt19937 rng(36);
  auto p = testsupport::random_params(rng, 60, true);
  SolveOptions one;
  one.threads = 1;
  SolveOptions four;
  four.threads = 4;
  auto a = regular_roots(p, one);
  auto b = regular_roots(p, four);
  REQUIRE(a.roots.size() == b.roots.size());
  for (std::size_t i = 0; i < a.roots.size(); ++i) {
    CHECK(a.roots[i].t == b.roots[i].t);
    CHECK(a.roots[i].z == b.roots[i].z);
    CHECK(a.roots[i].residual == b.roots[i].residual);
  }
}

TEST_CASE("root-set inversion symmetry of H") {
  std::mt19937 rng(37);
  auto p = testsupport::random_params(rng, 30, false);
  SolveOptions opts;
  auto res = regular_roots(p, opts);
  for (const RegularRoot& r : res.roots) {
    PolyEval h = eval_H(p, 1.0 / r.z);
    CHECK(std::abs(h.resolve()) < 1e-9 *
              (std::abs(p.b0) + std::abs(p.b1) + 2.0) *
              (std::abs(p.c0) + std::abs(p.cm1) + 2.0));
  }
}

#include <doctest.h>

#include <random>

#include "tridiag/applications.hpp"
#include "tridiag/oracle.hpp"
#include "tridiag/spectrum.hpp"

using namespace tridiag;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

TEST_CASE("advdiff_build: reduction coefficients and boundary") {
  auto mixed = advdiff_build(0.0, 20, BoundaryCondition::mixed);
  CHECK(mixed.alpha == 1.0);
  CHECK(mixed.q == 1.0);
  CHECK(mixed.d == -2.0);
  CHECK(mixed.system.boundary.cm1 == Complex(-1.0));
  CHECK(mixed.system.boundary.n == 19);  // paper-index n-1; H degree 2n+2

  auto diri = advdiff_build(0.0, 20, BoundaryCondition::dirichlet);
  CHECK(diri.system.boundary.cm1 == Complex(0.0));
  CHECK(diri.system.boundary.n == 18);

  double K = 5.0;
  auto m5 = advdiff_build(K, 100, BoundaryCondition::mixed);
  double kn = K / 100.0;
  CHECK(std::abs(m5.alpha - std::sqrt((1 - kn) / (1 + kn))) < 1e-15);
  CHECK(std::abs(m5.q - std::sqrt(1 - kn * kn)) < 1e-15);
  CHECK(std::abs(m5.d + 2.0 / std::sqrt(1 - kn * kn)) < 1e-14);
  CHECK(std::abs(m5.system.boundary.cm1 -
                 Complex(-1.0 / (m5.alpha * m5.alpha))) < 1e-14);
  CHECK(classify_roots(m5.system.boundary).Q == 2);

  CHECK_THROWS_AS(advdiff_build(30.0, 20, BoundaryCondition::mixed),
                  HypothesisViolation);
  CHECK_THROWS_AS(advdiff_build(0.0, 2, BoundaryCondition::mixed),
                  HypothesisViolation);
}

TEST_CASE("advdiff dense matrix matches the discretization") {
  double K = 3.0;
  int n = 6;
  auto sys = advdiff_build(K, n, BoundaryCondition::mixed);
  auto B = oracle::assemble_dense(sys.system);
  double kn = K / n;
  for (int i = 0; i < B.size; ++i) {
    CHECK(std::abs(B.at(i, i) + 2.0) < 1e-14);
    if (i + 1 < B.size)
      CHECK(std::abs(B.at(i, i + 1) - (1.0 + kn)) < 1e-14);
    if (i > 0 && i + 1 < B.size)
      CHECK(std::abs(B.at(i, i - 1) - (1.0 - kn)) < 1e-14);
  }
  CHECK(std::abs(B.at(B.size - 1, B.size - 2) - 2.0) < 1e-14);
}

TEST_CASE("advdiff spectrum: K=0 Dirichlet closed form") {
  auto sys = advdiff_build(0.0, 10, BoundaryCondition::dirichlet);
  auto nus = advdiff_spectrum(sys);
  REQUIRE(nus.size() == 9);
  std::vector<double> expect;
  for (int k = 1; k <= 9; ++k)
    expect.push_back(2.0 * 100.0 * (std::cos(kPi * k / 10.0) - 1.0));
  std::sort(expect.begin(), expect.end(), std::greater<double>());
  for (std::size_t i = 0; i < nus.size(); ++i)
    CHECK(std::abs(nus[i] - expect[i]) < 1e-9);
}

TEST_CASE("advdiff spectrum: K=0 mixed closed form") {
  int n = 50;
  auto sys = advdiff_build(0.0, n, BoundaryCondition::mixed);
  auto nus = advdiff_spectrum(sys);
  REQUIRE(static_cast<int>(nus.size()) == n);
  // canonical eigenvalues 2 cos((2k-1) pi / (2N+2)), N = n-1
  std::vector<double> expect;
  for (int k = 1; k <= n; ++k)
    expect.push_back(n * n *
                     (2.0 * std::cos((2 * k - 1) * kPi / (2.0 * n)) - 2.0));
  std::sort(expect.begin(), expect.end(), std::greater<double>());
  for (std::size_t i = 0; i < nus.size(); ++i)
    CHECK(std::abs(nus[i] - expect[i]) < 1e-8 * (1.0 + std::abs(expect[i])));
}

TEST_CASE("advdiff spectrum: negative K mixed stays below -K^2") {
  auto sys = advdiff_build(-3.0, 50, BoundaryCondition::mixed);
  auto nus = advdiff_spectrum(sys);
  for (double nu : nus) CHECK(nu < -9.0);
}

TEST_CASE("advdiff: K=5 mixed leading eigenvalue sits in (-K^2, 0)") {
  auto sys = advdiff_build(5.0, 200, BoundaryCondition::mixed);
  auto nus = advdiff_spectrum(sys);
  CHECK(nus.front() > -25.0);
  CHECK(nus.front() < 0.0);
  // cross-check against the dense oracle
  auto dense = oracle::assemble_dense(sys.system);
  for (Complex& z : dense.a) z *= 200.0 * 200.0;
  auto eig = oracle::dense_eigenvalues(std::move(dense));
  double best = 1e300;
  for (auto v : eig.values) best = std::min(best, std::abs(v - nus.front()));
  CHECK(best < 1e-6 * std::max(1.0, std::abs(nus.front())));
}

TEST_CASE("advdiff: exactly one special nu in (-K^2, 0), the other diverges") {
  double prev_low = 0.0;
  for (int n : {20, 40, 80}) {
    auto sys = advdiff_build(4.0, n, BoundaryCondition::mixed);
    SolveOptions opts;
    opts.refine_special = true;
    auto res = solve_spectrum(sys.system.boundary, opts);
    std::vector<double> special_nus;
    for (const Eigenpair& e : res.eigenpairs)
      if (e.kind == EigKind::special)
        special_nus.push_back(n * n * sys.q * (e.lambda.real() + sys.d));
    REQUIRE(special_nus.size() == 2);
    std::sort(special_nus.begin(), special_nus.end());
    CHECK(special_nus[1] > -16.0);
    CHECK(special_nus[1] < 0.0);
    CHECK(special_nus[0] < prev_low);  // monotone decrease toward -inf
    prev_low = special_nus[0];
  }
}

TEST_CASE("leading_eigenvalue_asymptotic closed forms") {
  auto la5 = leading_eigenvalue_asymptotic(5.0);
  CHECK(std::abs(la5.nu_closed_form + 100.0 / (std::exp(10.0) + 1.0)) < 1e-12);
  CHECK(la5.zeta > 0.0);
  CHECK(la5.zeta < 1.0);

  auto la8 = leading_eigenvalue_asymptotic(8.0);
  CHECK(std::abs(la8.nu - la8.nu_closed_form) <
        std::abs(la5.nu - la5.nu_closed_form));

  auto la10 = leading_eigenvalue_asymptotic(10.0);
  double ratio = std::log(la10.zeta) / (-2.0 * 10.0);
  CHECK(ratio > 0.9);
  CHECK(ratio < 1.1);

  CHECK_THROWS_AS(leading_eigenvalue_asymptotic(0.5), NoRootInInterval);
  CHECK_THROWS_AS(leading_eigenvalue_asymptotic(-1.0), HypothesisViolation);
}

TEST_CASE("pbc_failure: the worked example") {
  FailureSpec spec;
  spec.r1 = 0.5;
  spec.r2 = -2.0;
  auto rep = pbc_failure(spec, 100);
  CHECK(std::abs(rep.params.b0 + 1.5) < 1e-15);
  CHECK(std::abs(rep.params.b1 + 1.0) < 1e-15);
  CHECK(rep.region_member);
  CHECK(std::abs(rep.unstable_eigenvalue - 2.5) < 1e-15);
  CHECK(rep.shifted_growth > 0.0);
  CHECK(rep.oracle_checked);
  CHECK(rep.oracle_distance < 1e-6);
}

TEST_CASE("pbc_failure: right side mirrors the left") {
  FailureSpec spec;
  spec.r1 = 0.5;
  spec.r2 = -2.0;
  spec.side = FailureSpec::Side::right;
  auto rep = pbc_failure(spec, 80);
  CHECK(std::abs(rep.params.cm1 + 1.0) < 1e-15);  // 1/(r1 r2)
  CHECK(std::abs(rep.params.c0 + 1.5) < 1e-15);   // -1/r1 - 1/r2
  CHECK(rep.oracle_distance < 1e-6);
}

TEST_CASE("region membership boundary cases") {
  CHECK(failure_region_member(0.5, 0.0));
  CHECK(!failure_region_member(0.5, 0.30));  // 0.30 > sqrt(1/12)
  CHECK(failure_region_member(0.5, 0.28));
  CHECK(!failure_region_member(-0.1, 0.0));
  CHECK(!failure_region_member(1.0, 0.0));

  FailureSpec spec;
  spec.r1 = Complex(0.5, 0.29);
  spec.r2 = -2.0;
  CHECK(!pbc_failure(spec).region_member);
}

TEST_CASE("region raster matches pointwise membership") {
  auto rows = failure_region_samples(-0.1, 1.1, -0.4, 0.4, 13, 9);
  REQUIRE(rows.size() == 13u * 9u);
  for (const RegionSample& s : rows)
    CHECK(s.member == failure_region_member(s.a, s.b));
  CHECK_THROWS_AS(failure_region_samples(0, 1, 0, 1, 1, 5),
                  HypothesisViolation);
}

TEST_CASE("region equivalence: figure inequality vs proof inequality") {
  std::mt19937 rng(55);
  std::uniform_real_distribution<double> ua(-0.2, 1.2), ub(-0.8, 0.8);
  for (int i = 0; i < 10000; ++i) {
    double a = ua(rng), b = ub(rng);
    bool fig = failure_region_member(a, b);
    bool proof = a > 0.0 && a < 1.0 && a + a / (a * a + b * b) > 2.0;
    CHECK(fig == proof);
  }
}

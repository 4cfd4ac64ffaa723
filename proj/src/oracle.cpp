#include "tridiag/oracle.hpp"

#include <numeric>

namespace tridiag::oracle {

DenseMatrix assemble_dense(const BoundaryParams& p, int size_cap) {
  return assemble_dense_t<double>(p, size_cap);
}

DenseMatrix assemble_dense(const GeneralTridiagonal& B, int size_cap) {
  B.validate();
  const int n = B.boundary.n;
  const int size = n + 1;
  if (size > size_cap)
    throw SizeCap("dense assembly capped at " + std::to_string(size_cap));
  DenseMatrix m;
  m.size = size;
  m.a.assign(static_cast<std::size_t>(size) * size, Complex(0.0));
  const Complex q = B.q, d = B.d;
  const BoundaryParams& bp = B.boundary;
  m.at(0, 0) = q * (d - bp.b0);
  m.at(0, 1) = q * (1.0 - bp.b1) / B.alphas[0];
  for (int i = 1; i < n; ++i) {
    m.at(i, i - 1) = q * B.alphas[static_cast<std::size_t>(i) - 1];
    m.at(i, i) = q * d;
    m.at(i, i + 1) = q / B.alphas[static_cast<std::size_t>(i)];
  }
  m.at(n, n - 1) = q * B.alphas[static_cast<std::size_t>(n) - 1] * (1.0 - bp.cm1);
  m.at(n, n) = q * (d - bp.c0);
  return m;
}

MatchResult match_spectra(const std::vector<Complex>& a,
                          const std::vector<Complex>& b) {
  if (a.size() != b.size())
    throw LengthMismatch("match_spectra requires equal lengths");
  const int m = static_cast<int>(a.size());
  MatchResult out;
  out.permutation.assign(static_cast<std::size_t>(m), -1);
  std::vector<int> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    double mi = std::abs(a[static_cast<std::size_t>(i)]);
    double mj = std::abs(a[static_cast<std::size_t>(j)]);
    if (mi != mj) return mi > mj;
    const Complex &x = a[static_cast<std::size_t>(i)],
                  &y = a[static_cast<std::size_t>(j)];
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  std::vector<bool> used(static_cast<std::size_t>(m), false);
  double sum = 0.0;
  for (int idx : order) {
    int best = -1;
    double bd = 0.0;
    for (int j = 0; j < m; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      double dd = std::abs(a[static_cast<std::size_t>(idx)] -
                           b[static_cast<std::size_t>(j)]);
      if (best < 0 || dd < bd) {
        best = j;
        bd = dd;
      }
    }
    used[static_cast<std::size_t>(best)] = true;
    out.permutation[static_cast<std::size_t>(idx)] = best;
    out.max_dist = std::max(out.max_dist, bd);
    sum += bd;
  }
  out.mean_dist = m > 0 ? sum / m : 0.0;
  return out;
}

}  // namespace tridiag::oracle

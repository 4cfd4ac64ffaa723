#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "tridiag/kernel.hpp"
#include "tridiag/transform.hpp"

// Desk-scale verification path, independent of the fast solver: dense
// assembly, a complex shifted Hessenberg QR eigensolver, and greedy spectrum
// matching. Templated on the real type so experiments can run it in
// long double.
namespace tridiag::oracle {

template <typename R>
struct DenseMatrixT {
  int size = 0;
  std::vector<std::complex<R>> a;  // row-major

  std::complex<R>& at(int i, int j) {
    return a[static_cast<std::size_t>(i) * size + j];
  }
  const std::complex<R>& at(int i, int j) const {
    return a[static_cast<std::size_t>(i) * size + j];
  }
};

using DenseMatrix = DenseMatrixT<double>;

inline constexpr int kDefaultSizeCap = 2000;

template <typename R>
DenseMatrixT<R> assemble_dense_t(const BoundaryParams& p,
                                 int size_cap = kDefaultSizeCap) {
  const int size = p.n + 1;
  if (size > size_cap)
    throw SizeCap("dense assembly capped at " + std::to_string(size_cap));
  if (p.n < 2) throw DimensionTooSmall("dense assembly requires n >= 2");
  DenseMatrixT<R> m;
  m.size = size;
  m.a.assign(static_cast<std::size_t>(size) * size, std::complex<R>(0));
  auto cv = [](Complex z) {
    return std::complex<R>(static_cast<R>(z.real()), static_cast<R>(z.imag()));
  };
  m.at(0, 0) = cv(-p.b0);
  m.at(0, 1) = cv(Complex(1.0) - p.b1);
  for (int i = 1; i < size - 1; ++i) {
    m.at(i, i - 1) = std::complex<R>(1);
    m.at(i, i + 1) = std::complex<R>(1);
  }
  m.at(size - 1, size - 2) = cv(Complex(1.0) - p.cm1);
  m.at(size - 1, size - 1) = cv(-p.c0);
  return m;
}

DenseMatrix assemble_dense(const BoundaryParams& p,
                           int size_cap = kDefaultSizeCap);
DenseMatrix assemble_dense(const GeneralTridiagonal& B,
                           int size_cap = kDefaultSizeCap);

template <typename R>
struct EigValues {
  std::vector<std::complex<R>> values;
  bool converged = true;
};

// Eigenvalues of an upper-Hessenberg matrix by explicit single-shift QR with
// Wilkinson shifts and occasional exceptional shifts. Consumes its argument.
template <typename R>
EigValues<R> dense_eigenvalues(DenseMatrixT<R> M,
                               int max_iter_per_block = 80) {
  using C = std::complex<R>;
  EigValues<R> out;
  const int n = M.size;
  if (n == 0) return out;
  auto H = [&](int i, int j) -> C& {
    return M.a[static_cast<std::size_t>(i) * n + j];
  };
  const R eps = std::numeric_limits<R>::epsilon();
  auto abs1 = [](C z) { return std::abs(z.real()) + std::abs(z.imag()); };

  R anorm = R(0);
  for (int i = 0; i < n; ++i)
    for (int j = std::max(0, i - 1); j < n; ++j) anorm += abs1(H(i, j));
  out.values.assign(static_cast<std::size_t>(n), C(0));
  if (anorm == R(0)) return out;

  std::vector<std::pair<R, C>> rot(static_cast<std::size_t>(n));
  int hi = n - 1;
  int it_block = 0;
  while (hi >= 0) {
    int l = hi;
    while (l > 0) {
      R s = abs1(H(l - 1, l - 1)) + abs1(H(l, l));
      if (s == R(0)) s = anorm;
      if (abs1(H(l, l - 1)) <= eps * s) {
        H(l, l - 1) = C(0);
        break;
      }
      --l;
    }
    if (l == hi) {
      out.values[static_cast<std::size_t>(hi)] = H(hi, hi);
      --hi;
      it_block = 0;
      continue;
    }
    if (++it_block > max_iter_per_block) {
      out.converged = false;
      for (int i = l; i <= hi; ++i)
        out.values[static_cast<std::size_t>(i)] = H(i, i);
      hi = l - 1;
      it_block = 0;
      continue;
    }

    C sigma;
    if (it_block % 12 == 0) {
      sigma = H(hi, hi) + C(R(0.75) * std::abs(H(hi, hi - 1)), R(0));
    } else {
      C a = H(hi - 1, hi - 1), b = H(hi - 1, hi);
      C c = H(hi, hi - 1), d = H(hi, hi);
      C delta = (a - d) * R(0.5);
      C disc = std::sqrt(delta * delta + b * c);
      C m1 = delta - disc, m2 = delta + disc;
      sigma = d + (abs1(m1) <= abs1(m2) ? m1 : m2);
    }

    for (int i = l; i <= hi; ++i) H(i, i) -= sigma;
    for (int i = l; i < hi; ++i) {
      C f = H(i, i), g = H(i + 1, i);
      R c_r;
      C s;
      R af = std::abs(f), ag = std::abs(g);
      if (ag == R(0)) {
        c_r = R(1);
        s = C(0);
      } else if (af == R(0)) {
        c_r = R(0);
        s = std::conj(g) / ag;
      } else {
        R rn = std::hypot(af, ag);
        c_r = af / rn;
        s = (f / af) * std::conj(g) / rn;
      }
      rot[static_cast<std::size_t>(i)] = {c_r, s};
      for (int j = i; j <= hi; ++j) {
        C x = H(i, j), y = H(i + 1, j);
        H(i, j) = c_r * x + s * y;
        H(i + 1, j) = -std::conj(s) * x + c_r * y;
      }
      H(i + 1, i) = C(0);
    }
    for (int i = l; i < hi; ++i) {
      auto [c_r, s] = rot[static_cast<std::size_t>(i)];
      int rmax = std::min(i + 1, hi);
      for (int r = l; r <= rmax; ++r) {
        C x = H(r, i), y = H(r, i + 1);
        H(r, i) = c_r * x + std::conj(s) * y;
        H(r, i + 1) = -s * x + c_r * y;
      }
    }
    for (int i = l; i <= hi; ++i) H(i, i) += sigma;
  }
  return out;
}

struct MatchResult {
  double max_dist = 0.0;
  double mean_dist = 0.0;
  std::vector<int> permutation;  // permutation[i] = index in b matched to a[i]
};

// Greedy minimal-distance matching: process a by descending magnitude,
// pick the nearest unused b each time.
MatchResult match_spectra(const std::vector<Complex>& a,
                          const std::vector<Complex>& b);

// LU determinant with partial pivoting (test support).
template <typename R>
std::complex<R> determinant(DenseMatrixT<R> M) {
  using C = std::complex<R>;
  const int n = M.size;
  auto A = [&](int i, int j) -> C& {
    return M.a[static_cast<std::size_t>(i) * n + j];
  };
  auto abs1 = [](C z) { return std::abs(z.real()) + std::abs(z.imag()); };
  C det = C(1);
  for (int k = 0; k < n; ++k) {
    int piv = k;
    R best = abs1(A(k, k));
    for (int i = k + 1; i < n; ++i)
      if (abs1(A(i, k)) > best) {
        best = abs1(A(i, k));
        piv = i;
      }
    if (best == R(0)) return C(0);
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(A(k, j), A(piv, j));
      det = -det;
    }
    det *= A(k, k);
    for (int i = k + 1; i < n; ++i) {
      C f = A(i, k) / A(k, k);
      for (int j = k + 1; j < n; ++j) A(i, j) -= f * A(k, j);
      A(i, k) = C(0);
    }
  }
  return det;
}

// A few steps of inverse iteration at shift mu; used to validate oracle
// eigenvalues by residual.
template <typename R>
std::vector<std::complex<R>> inverse_iteration(DenseMatrixT<R> M,
                                               std::complex<R> mu,
                                               int iters = 4) {
  using C = std::complex<R>;
  const int n = M.size;
  auto A = [&](int i, int j) -> C& {
    return M.a[static_cast<std::size_t>(i) * n + j];
  };
  auto abs1 = [](C z) { return std::abs(z.real()) + std::abs(z.imag()); };
  R scale = R(0);
  for (const auto& z : M.a) scale = std::max(scale, abs1(z));
  mu += C(scale * std::numeric_limits<R>::epsilon() * R(16), R(0));
  for (int i = 0; i < n; ++i) A(i, i) -= mu;
  // LU factorization with partial pivoting
  std::vector<int> piv(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    int pk = k;
    R best = abs1(A(k, k));
    for (int i = k + 1; i < n; ++i)
      if (abs1(A(i, k)) > best) {
        best = abs1(A(i, k));
        pk = i;
      }
    piv[static_cast<std::size_t>(k)] = pk;
    if (pk != k)
      for (int j = 0; j < n; ++j) std::swap(A(k, j), A(pk, j));
    if (A(k, k) == C(0))
      A(k, k) = C(scale * std::numeric_limits<R>::epsilon(), R(0));
    for (int i = k + 1; i < n; ++i) {
      A(i, k) /= A(k, k);
      for (int j = k + 1; j < n; ++j) A(i, j) -= A(i, k) * A(k, j);
    }
  }
  std::vector<C> x(static_cast<std::size_t>(n), C(1));
  for (int pass = 0; pass < iters; ++pass) {
    for (int k = 0; k < n; ++k) {
      if (piv[static_cast<std::size_t>(k)] != k)
        std::swap(x[static_cast<std::size_t>(k)],
                  x[static_cast<std::size_t>(piv[static_cast<std::size_t>(k)])]);
      for (int i = k + 1; i < n; ++i)
        x[static_cast<std::size_t>(i)] -=
            A(i, k) * x[static_cast<std::size_t>(k)];
    }
    for (int i = n - 1; i >= 0; --i) {
      for (int j = i + 1; j < n; ++j)
        x[static_cast<std::size_t>(i)] -=
            A(i, j) * x[static_cast<std::size_t>(j)];
      x[static_cast<std::size_t>(i)] /= A(i, i);
    }
    R mx = R(0);
    for (const C& c : x) mx = std::max(mx, std::abs(c));
    for (C& c : x) c /= mx;
  }
  return x;
}

}  // namespace tridiag::oracle

#include "tridiag/transform.hpp"

#include <cmath>

namespace tridiag {

namespace {
// Exponentially large |eps_i| beyond this makes mapped residuals meaningless
// in double precision.
constexpr double kConditioningLogThreshold = 36.0;
}  // namespace

void GeneralTridiagonal::validate() const {
  if (q == 0.0) throw Error("general form requires q != 0");
  if (static_cast<int>(alphas.size()) != boundary.n)
    throw LengthMismatch("general form needs n == boundary.n weights");
  for (const Complex& a : alphas)
    if (a == 0.0) throw Error("general form requires all alphas nonzero");
}

Complex ConjugationData::eps(int i) const {
  double lm = log_mag[static_cast<std::size_t>(i)];
  if (lm > 700.0) throw Error("eps overflow; use the log form");
  return std::polar(std::exp(lm), phase[static_cast<std::size_t>(i)]);
}

std::pair<BoundaryParams, ConjugationData> to_canonical(
    const GeneralTridiagonal& B) {
  B.validate();
  const int n = B.boundary.n;
  ConjugationData conj;
  conj.log_mag.resize(static_cast<std::size_t>(n) + 1, 0.0);
  conj.phase.resize(static_cast<std::size_t>(n) + 1, 0.0);
  for (int i = 1; i <= n; ++i) {
    const Complex a = B.alphas[static_cast<std::size_t>(i) - 1];
    conj.log_mag[i] = conj.log_mag[i - 1] + std::log(std::abs(a));
    conj.phase[i] = conj.phase[i - 1] + std::arg(a);
    conj.max_log_mag = std::max(conj.max_log_mag, std::abs(conj.log_mag[i]));
  }
  conj.conditioning_warning = conj.max_log_mag > kConditioningLogThreshold;
  return {B.boundary, conj};
}

MappedEigenpair map_eigenpair(const GeneralTridiagonal& B,
                              const ConjugationData& conj,
                              const Eigenpair& pair) {
  MappedEigenpair out;
  out.lambda = B.q * (pair.lambda + B.d);
  out.conditioning_warning = conj.conditioning_warning;
  if (!pair.vector.empty()) {
    const std::size_t m = pair.vector.size();
    if (m != conj.log_mag.size())
      throw LengthMismatch("vector length does not match the conjugation");
    out.unit.resize(m);
    out.log_mag.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      out.unit[i] =
          pair.vector[i] * std::polar(1.0, conj.phase[i]);
      out.log_mag[i] = conj.log_mag[i];
    }
  }
  return out;
}

std::vector<Complex> MappedEigenpair::dense() const {
  std::vector<Complex> v(unit.size());
  for (std::size_t i = 0; i < unit.size(); ++i) {
    if (log_mag[i] > 700.0)
      throw Error("mapped eigenvector overflows double range");
    v[i] = unit[i] * std::exp(log_mag[i]);
  }
  return v;
}

GeneralTridiagonal toeplitz(Complex sigma, Complex tau, Complex delta,
                            int n) {
  if (sigma == 0.0 || tau == 0.0)
    throw Error("Toeplitz form requires nonzero off-diagonals");
  GeneralTridiagonal B;
  B.q = std::sqrt(sigma * tau);
  B.d = delta / B.q;
  B.alphas.assign(static_cast<std::size_t>(n), std::sqrt(sigma / tau));
  B.boundary = BoundaryParams{0.0, 0.0, 0.0, 0.0, n};
  return B;
}

GeneralTridiagonal flocking_matrix(Complex psi, Complex sigma, Complex tau,
                                   Complex phi, Complex theta, int n) {
  if (sigma == 0.0 || tau == 0.0)
    throw Error("flocking matrix requires sigma, tau != 0");
  GeneralTridiagonal B;
  B.q = std::sqrt(sigma * tau);
  B.d = 0.0;
  B.alphas.assign(static_cast<std::size_t>(n), std::sqrt(sigma / tau));
  BoundaryParams bp;
  bp.b0 = -psi / B.q;
  bp.b1 = 1.0;  // zero super-diagonal in the first row
  bp.cm1 = phi / sigma;
  bp.c0 = -theta / B.q;
  bp.n = n;
  B.boundary = bp;
  return B;
}

}  // namespace tridiag

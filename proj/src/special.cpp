#include "tridiag/special.hpp"

#include <algorithm>
#include <cmath>

namespace tridiag {

std::vector<SpecialRoot> special_roots(const RootClassification& cls) {
  if (!cls.on_circle.empty() && !cls.real_params)
    throw DegenerateCircleRoot(
        "special roots undefined: quadratic roots on the unit circle");
  std::vector<Complex> inside;
  for (const Complex& w :
       {cls.left_roots[0], cls.left_roots[1], cls.right_roots[0],
        cls.right_roots[1]}) {
    if (std::abs(w) > 1.0 && std::abs(std::abs(w) - 1.0) >= 1e-9)
      inside.push_back(1.0 / w);
  }
  std::sort(inside.begin(), inside.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  std::vector<SpecialRoot> out;
  for (const Complex& y : inside) {
    if (!out.empty() && std::abs(y - out.back().y) <= 1e-8) {
      out.back().multiplicity += 1;
    } else {
      out.push_back(SpecialRoot{y, 1, false, 0.0});
    }
  }
  return out;
}

SpecialRoot refine_on_H(const BoundaryParams& p, Complex y, double inside_tol,
                        int max_iter) {
  SpecialRoot out{y, 1, false, 0.0};
  Complex z = y;
  double h_abs = std::abs(eval_H_inside(p, z));
  for (int i = 0; i < max_iter; ++i) {
    Complex hp = eval_H_prime_inside(p, z);
    if (hp == 0.0) break;
    Complex step = eval_H_inside(p, z) / hp;
    // damped step: keep the iterate inside the disc and |H| decreasing
    double damp = 1.0;
    bool accepted = false;
    for (int half = 0; half < 30; ++half) {
      Complex next = z - damp * step;
      if (std::abs(next) < 1.0 - inside_tol) {
        double h_next = std::abs(eval_H_inside(p, next));
        if (h_next < h_abs) {
          z = next;
          h_abs = h_next;
          accepted = true;
          break;
        }
      }
      damp *= 0.5;
    }
    if (!accepted) break;
    out.refined = true;
    if (damp * std::abs(step) <= 1e-17 * std::max(1.0, std::abs(z))) break;
  }
  if (out.refined) {
    out.refine_delta = std::abs(z - y);
    out.y = z;
  }
  return out;
}

std::vector<Complex> special_eigenvalues(
    const std::vector<SpecialRoot>& roots) {
  std::vector<Complex> out;
  for (const SpecialRoot& r : roots) {
    Complex s = r.y + 1.0 / r.y;
    for (int m = 0; m < r.multiplicity; ++m) out.push_back(s);
  }
  return out;
}

}  // namespace tridiag

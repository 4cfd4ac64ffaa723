#pragma once

#include <vector>

#include "tridiag/kernel.hpp"

namespace tridiag {

// A root of the auxiliary polynomial p strictly inside the unit circle,
// stored as 1/w for a monic-quadratic root w with |w| > 1.
struct SpecialRoot {
  Complex y{0.0, 0.0};
  int multiplicity = 1;
  bool refined = false;
  double refine_delta = 0.0;  // distance moved by refinement
};

// The Q inside-circle representatives; coincident roots (within 1e-8) are
// merged with multiplicity. Throws DegenerateCircleRoot for complex
// parameters with on-circle collisions.
std::vector<SpecialRoot> special_roots(const RootClassification& cls);

// Best-effort Newton iteration on H from start y. Accepts only while the
// iterate stays inside {|z| < 1 - tol} and |H| decreases; otherwise returns
// the unrefined root with refined = false.
SpecialRoot refine_on_H(const BoundaryParams& p, Complex y,
                        double inside_tol = 1e-12, int max_iter = 50);

// s = y + 1/y per root, multiplicity preserved (one entry per multiplicity).
std::vector<Complex> special_eigenvalues(const std::vector<SpecialRoot>& roots);

}  // namespace tridiag

#pragma once

#include "chsh/complex_matrix.hpp"

namespace chsh {

// State-preparation angles in radians. These alpha/beta pick the shared
// state; they are unrelated to the degeneracy labels that index projector
// families, even though the same Greek letters are customary for both.
struct StateAngles {
  double alpha = 0.0;
  double beta = 0.0;
};

enum class StateKind { kEntangled, kProduct };

struct SharedState {
  StateKind kind;
  StateAngles angles;
  Ket ket;  // dim 4, normalized
};

// (sin a, -sin b, cos b, cos a)^T / sqrt(2). The prefactor normalizes for
// every (a, b); maximally entangled at a = b = pi/4.
SharedState make_entangled(StateAngles angles);

// N2 (sin a, sin a, cos b, cos b)^T with N2 = (2(sin^2 a + cos^2 b))^{-1/2},
// i.e. (sin a |0> + cos b |1>) (x) |+> after normalization. Throws
// DegenerateState when sin^2 a + cos^2 b < 1e-12.
SharedState make_product(StateAngles angles);

ComplexMatrix density(const SharedState& s);  // |ket><ket|

}  // namespace chsh

#include "chsh/states.hpp"

#include <cmath>

#include "chsh/errors.hpp"

namespace chsh {

SharedState make_entangled(StateAngles angles) {
  const double s = 1.0 / std::sqrt(2.0);
  Ket ket(4, {s * std::sin(angles.alpha), -s * std::sin(angles.beta),
              s * std::cos(angles.beta), s * std::cos(angles.alpha)});
  return SharedState{StateKind::kEntangled, angles, std::move(ket)};
}

SharedState make_product(StateAngles angles) {
  const double sa = std::sin(angles.alpha);
  const double cb = std::cos(angles.beta);
  const double w = sa * sa + cb * cb;
  if (w < 1e-12) {
    throw DegenerateState("product state is the null vector: sin^2(alpha) + cos^2(beta) < 1e-12");
  }
  const double n2 = 1.0 / std::sqrt(2.0 * w);
  Ket ket(4, {n2 * sa, n2 * sa, n2 * cb, n2 * cb});
  return SharedState{StateKind::kProduct, angles, std::move(ket)};
}

ComplexMatrix density(const SharedState& s) { return outer(s.ket); }

}  // namespace chsh

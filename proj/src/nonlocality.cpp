#include "chsh/nonlocality.hpp"

#include <cmath>
#include <string>

#include "chsh/errors.hpp"
#include "chsh/observables.hpp"

namespace chsh {

namespace {

// Frobenius distance from the nearest scalar multiple of the identity.
double distance_from_scalar_identity(const ComplexMatrix& m) {
  const Complex lambda = m.trace() * (1.0 / static_cast<double>(m.dim()));
  double s = 0.0;
  for (int i = 0; i < m.dim(); ++i) {
    for (int j = 0; j < m.dim(); ++j) {
      const Complex d = m.at(i, j) - (i == j ? lambda : Complex{});
      s += std::norm(d);
    }
  }
  return std::sqrt(s);
}

FactorizationReport check_subspace(double param, Outcome which) {
  const ComplexMatrix filter = c_plus(param);
  const ComplexMatrix i2 = ComplexMatrix::identity(2);

  // Alice-side coarse projector of A1 restricted to one qubit: (I +- sx)/2.
  const double sign = which == Outcome::kPlus ? 1.0 : -1.0;
  const ComplexMatrix a1_side = 0.5 * (i2 + sign * sigma_x());

  const ContextBasisParams p = which == Outcome::kPlus
                                   ? ContextBasisParams{param, 1.0}
                                   : ContextBasisParams{1.0, param};
  const auto& fine = rotated_family(AliceSetting::kA1, p).fine(which);

  FactorizationReport report{param, filter, 0.0, 0.0, false};
  report.residual_first = max_abs_diff(fine[0], tensor(a1_side, filter));
  report.residual_second = max_abs_diff(fine[1], tensor(a1_side, i2 - filter));
  report.bob_side_nontrivial = distance_from_scalar_identity(filter) > 1e-9;
  return report;
}

}  // namespace

ComplexMatrix c_plus(double eta1) {
  if (!(eta1 >= 0.0 && eta1 <= 1.0)) {
    throw ParamOutOfRange("eta1 must lie in [0, 1], got " + std::to_string(eta1));
  }
  const double root = std::sqrt(1.0 - eta1 * eta1);
  ComplexMatrix m = (eta1 * root) * sigma_x();
  m.at(0, 0) += 1.0 - eta1 * eta1;  // (1-eta1^2)|0><0|
  m.at(1, 1) += eta1 * eta1;        // eta1^2|1><1|
  return m;
}

FactorizationReport verify_factorization(double eta1) {
  return check_subspace(eta1, Outcome::kPlus);
}

FactorizationReport verify_factorization_minus(double gamma1) {
  return check_subspace(gamma1, Outcome::kMinus);
}

}  // namespace chsh

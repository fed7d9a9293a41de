#pragma once

#include <array>

#include "chsh/complex_matrix.hpp"

namespace chsh {

// Dichotomic measurement outcome; the enum value is the eigenvalue.
enum class Outcome : int { kPlus = +1, kMinus = -1 };
constexpr int sign_of(Outcome m) { return static_cast<int>(m); }

enum class AliceSetting { kA1, kA2 };
enum class BobSetting { kB1, kB2 };

// Basis choice inside the degenerate eigenspaces of one Alice setting:
// eta rotates the +1 subspace basis, gamma the -1 subspace basis.
struct ContextBasisParams {
  double eta = 1.0;    // in [0, 1]
  double gamma = 1.0;  // in [0, 1]
};
void validate(const ContextBasisParams& p);  // throws ParamOutOfRange

// Alice's per-context choices: (eta1, gamma1) for the A1B1 correlation,
// (eta1', gamma1') for A1B2, (eta2, gamma2) for A2B1, (eta2', gamma2') for
// A2B2. The flat ordering used by the CLI and the optimizer is
// eta1, gamma1, eta1p, gamma1p, eta2, gamma2, eta2p, gamma2p.
struct BasisParams {
  ContextBasisParams a1b1;
  ContextBasisParams a1b2;
  ContextBasisParams a2b1;
  ContextBasisParams a2b2;

  static BasisParams canonical();  // all eta = gamma = 1
};
void validate(const BasisParams& p);

ComplexMatrix sigma_x();
ComplexMatrix sigma_y();
ComplexMatrix sigma_z();

// A1 = sx (x) I, A2 = sz (x) I, B1 = I (x) (sz - sx)/sqrt2,
// B2 = I (x) (sz + sx)/sqrt2. All four are 4x4, eigenvalues {+1,+1,-1,-1},
// and every A commutes with every B.
struct ChshObservables {
  ComplexMatrix a1;
  ComplexMatrix a2;
  ComplexMatrix b1;
  ComplexMatrix b2;
};
ChshObservables chsh_observables();

// Outcome structure of a dichotomic degenerate observable on C^2 (x) C^2:
// one rank-2 subspace projector per eigenvalue (coarse) plus an ordered pair
// of rank-1 refinements per eigenvalue (fine). fine(m)[0] + fine(m)[1] =
// coarse(m) and sum_m sign(m) coarse(m) reconstructs the observable.
class ProjectorFamily {
 public:
  ProjectorFamily(ComplexMatrix observable, const std::array<Ket, 2>& plus_basis,
                  const std::array<Ket, 2>& minus_basis);

  const ComplexMatrix& observable() const { return observable_; }
  const ComplexMatrix& coarse(Outcome m) const;
  const std::array<ComplexMatrix, 2>& fine(Outcome m) const;

 private:
  ComplexMatrix observable_;
  ComplexMatrix coarse_plus_;
  ComplexMatrix coarse_minus_;
  std::array<ComplexMatrix, 2> fine_plus_;
  std::array<ComplexMatrix, 2> fine_minus_;
};

// Families in the fixed reference eigenbases of A1 and A2.
ProjectorFamily canonical_family(AliceSetting which);

// Families in the rotated eigenbases
//   |1+'> = eta |1+> + sqrt(1-eta^2) |2+>,  |2+'> = sqrt(1-eta^2) |1+> - eta |2+>
// (gamma likewise in the -1 subspace). The coarse projectors are identical to
// the canonical ones for every parameter choice. Throws ParamOutOfRange.
ProjectorFamily rotated_family(AliceSetting which, const ContextBasisParams& p);

// Bob's observables carry only the coarse structure in the sequential
// probabilities (the refinement of a terminal measurement sums out); the fine
// pair here is a fixed canonical split kept so the family invariants hold.
ProjectorFamily bob_family(BobSetting which);

}  // namespace chsh

#pragma once

#include <array>

#include "chsh/complex_matrix.hpp"
#include "chsh/observables.hpp"

namespace chsh {

// Lueders projects onto the full degenerate subspace of each outcome and is
// basis independent. VonNeumann projects onto each rank-1 eigenvector of the
// chosen fine basis and is not.
enum class UpdateRule { kLueders, kVonNeumann };
const char* update_rule_name(UpdateRule rule);

// Joint outcome distribution of a sequential (Alice, Bob) measurement.
// Probabilities within -1e-12 of zero are clamped to zero; anything more
// negative means the input was not a valid density and throws.
class JointDistribution {
 public:
  JointDistribution(double pp, double pm, double mp, double mm);

  double prob(Outcome m, Outcome n) const;
  double expectation() const;                    // sum over m n of m*n*P(m,n)
  std::array<double, 2> alice_marginal() const;  // {P(m=+1), P(m=-1)}
  std::array<double, 2> bob_marginal() const;    // {P(n=+1), P(n=-1)}

 private:
  std::array<double, 4> p_;  // (+,+), (+,-), (-,+), (-,-)
};

// Throws InvalidDensity unless rho is finite, hermitian, unit trace, with
// nonnegative diagonal (all within 1e-9).
void validate_density(const ComplexMatrix& rho);

// rho_l = sum_m P_m rho P_m over the coarse projectors. Trace preserving.
ComplexMatrix lueders_update(const ComplexMatrix& rho, const ProjectorFamily& fam);

// rho_v = sum_{m,alpha} P_m^alpha rho P_m^alpha over the fine projectors.
// A further pinching of the Lueders output: purity(rho_v) <= purity(rho_l).
ComplexMatrix von_neumann_update(const ComplexMatrix& rho, const ProjectorFamily& fam);

// Lueders:    P(m,n) = Tr[ A_m rho A_m B_n ]            (coarse A_m)
// VonNeumann: P(m,n) = Tr[ (sum_a A_m^a rho A_m^a) B_n ] (fine A_m^a)
// where B_n is Bob's coarse projector; Bob's measurement is terminal, so his
// refinement never enters.
JointDistribution joint_distribution(const ComplexMatrix& rho,
                                     const ProjectorFamily& alice,
                                     const ProjectorFamily& bob, UpdateRule rule);

double joint_expectation(const ComplexMatrix& rho, const ProjectorFamily& alice,
                         const ProjectorFamily& bob, UpdateRule rule);

// Tr[(A+1 rho A+2 + A+2 rho A+1 - A-1 rho A-2 - A-2 rho A-1)(I (x) B)] over
// alice's fine projectors, with bob_observable the full 4x4 operator. The
// exact identity joint_expectation(VonNeumann) + cross_term =
// joint_expectation(Lueders) holds for every state and basis choice.
double cross_term(const ComplexMatrix& rho, const ProjectorFamily& alice,
                  const ComplexMatrix& bob_observable);

}  // namespace chsh

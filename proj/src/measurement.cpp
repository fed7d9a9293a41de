#include "chsh/measurement.hpp"

#include <cmath>
#include <string>

#include "chsh/errors.hpp"

namespace chsh {

namespace {

constexpr double kDensityTol = 1e-9;
constexpr double kProbClamp = 1e-12;  // negative dust tolerated before error

// Tr[a b] without forming the product.
Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  Complex s = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) s += a.at(i, j) * b.at(j, i);
  return s;
}

ComplexMatrix sandwich(const ComplexMatrix& p, const ComplexMatrix& rho) {
  return p * rho * p;
}

// Unnormalized post-measurement operator for outcome m.
ComplexMatrix outcome_update(const ComplexMatrix& rho, const ProjectorFamily& fam,
                             Outcome m, UpdateRule rule) {
  if (rule == UpdateRule::kLueders) return sandwich(fam.coarse(m), rho);
  const auto& fine = fam.fine(m);
  return sandwich(fine[0], rho) + sandwich(fine[1], rho);
}

int index_of(Outcome m, Outcome n) {
  return (m == Outcome::kPlus ? 0 : 2) + (n == Outcome::kPlus ? 0 : 1);
}

}  // namespace

const char* update_rule_name(UpdateRule rule) {
  return rule == UpdateRule::kLueders ? "lueders" : "von-neumann";
}

JointDistribution::JointDistribution(double pp, double pm, double mp, double mm)
    : p_{pp, pm, mp, mm} {
  double sum = 0.0;
  for (double& p : p_) {
    if (p < -kProbClamp) {
      throw InvalidDensity("joint probability " + std::to_string(p) +
                           " is negative beyond tolerance");
    }
    if (p < 0.0) p = 0.0;
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-10) {
    throw InvalidDensity("joint probabilities sum to " + std::to_string(sum));
  }
}

double JointDistribution::prob(Outcome m, Outcome n) const {
  return p_[index_of(m, n)];
}

double JointDistribution::expectation() const {
  return p_[0] - p_[1] - p_[2] + p_[3];
}

std::array<double, 2> JointDistribution::alice_marginal() const {
  return {p_[0] + p_[1], p_[2] + p_[3]};
}

std::array<double, 2> JointDistribution::bob_marginal() const {
  return {p_[0] + p_[2], p_[1] + p_[3]};
}

void validate_density(const ComplexMatrix& rho) {
  if (!rho.is_finite()) throw InvalidDensity("density matrix has non-finite entries");
  if (!is_hermitian(rho, kDensityTol)) throw InvalidDensity("density matrix is not hermitian");
  if (!is_unit_trace(rho, kDensityTol)) throw InvalidDensity("density matrix trace is not 1");
  for (int i = 0; i < rho.dim(); ++i) {
    if (rho.at(i, i).real() < -kDensityTol) {
      throw InvalidDensity("density matrix has a negative diagonal entry");
    }
  }
}

ComplexMatrix lueders_update(const ComplexMatrix& rho, const ProjectorFamily& fam) {
  validate_density(rho);
  return outcome_update(rho, fam, Outcome::kPlus, UpdateRule::kLueders) +
         outcome_update(rho, fam, Outcome::kMinus, UpdateRule::kLueders);
}

ComplexMatrix von_neumann_update(const ComplexMatrix& rho, const ProjectorFamily& fam) {
  validate_density(rho);
  return outcome_update(rho, fam, Outcome::kPlus, UpdateRule::kVonNeumann) +
         outcome_update(rho, fam, Outcome::kMinus, UpdateRule::kVonNeumann);
}

JointDistribution joint_distribution(const ComplexMatrix& rho,
                                     const ProjectorFamily& alice,
                                     const ProjectorFamily& bob, UpdateRule rule) {
  validate_density(rho);
  const ComplexMatrix post_plus = outcome_update(rho, alice, Outcome::kPlus, rule);
  const ComplexMatrix post_minus = outcome_update(rho, alice, Outcome::kMinus, rule);
  const auto p = [&](const ComplexMatrix& post, Outcome n) {
    return trace_of_product(post, bob.coarse(n)).real();
  };
  return JointDistribution(p(post_plus, Outcome::kPlus), p(post_plus, Outcome::kMinus),
                           p(post_minus, Outcome::kPlus), p(post_minus, Outcome::kMinus));
}

double joint_expectation(const ComplexMatrix& rho, const ProjectorFamily& alice,
                         const ProjectorFamily& bob, UpdateRule rule) {
  return joint_distribution(rho, alice, bob, rule).expectation();
}

double cross_term(const ComplexMatrix& rho, const ProjectorFamily& alice,
                  const ComplexMatrix& bob_observable) {
  validate_density(rho);
  const auto& fp = alice.fine(Outcome::kPlus);
  const auto& fm = alice.fine(Outcome::kMinus);
  const ComplexMatrix x = fp[0] * rho * fp[1] + fp[1] * rho * fp[0] -
                          fm[0] * rho * fm[1] - fm[1] * rho * fm[0];
  return trace_of_product(x, bob_observable).real();
}

}  // namespace chsh

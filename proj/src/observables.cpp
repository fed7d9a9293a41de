#include "chsh/observables.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "chsh/errors.hpp"

namespace chsh {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

void check_unit_interval(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw ParamOutOfRange(std::string(name) + " must lie in [0, 1], got " +
                          std::to_string(v));
  }
}

// c1 * a + c2 * b for orthonormal a, b with c1^2 + c2^2 = 1.
Ket combine(const Ket& a, const Ket& b, double c1, double c2) {
  std::array<Complex, Ket::kMaxDim> amps{};
  for (int i = 0; i < a.dim(); ++i) amps[i] = c1 * a.amp(i) + c2 * b.amp(i);
  return Ket(a.dim(), std::span<const Complex>(amps.data(), a.dim()));
}

// Reference eigenbases, eigenvalue order (+1, +1, -1, -1), in the
// |00>,|01>,|10>,|11> product basis.
std::array<Ket, 4> canonical_kets(AliceSetting which) {
  const double s = kInvSqrt2;
  if (which == AliceSetting::kA1) {
    return {Ket(4, {0.0, s, 0.0, s}), Ket(4, {s, 0.0, s, 0.0}),
            Ket(4, {0.0, -s, 0.0, s}), Ket(4, {-s, 0.0, s, 0.0})};
  }
  return {Ket(4, {0.0, 1.0, 0.0, 0.0}), Ket(4, {1.0, 0.0, 0.0, 0.0}),
          Ket(4, {0.0, 0.0, 0.0, 1.0}), Ket(4, {0.0, 0.0, 1.0, 0.0})};
}

ComplexMatrix alice_observable(AliceSetting which) {
  return tensor(which == AliceSetting::kA1 ? sigma_x() : sigma_z(),
                ComplexMatrix::identity(2));
}

ComplexMatrix bob_qubit_observable(BobSetting which) {
  const double sign = which == BobSetting::kB1 ? -1.0 : 1.0;
  return kInvSqrt2 * (sigma_z() + sign * sigma_x());
}

}  // namespace

void validate(const ContextBasisParams& p) {
  check_unit_interval(p.eta, "eta");
  check_unit_interval(p.gamma, "gamma");
}

void validate(const BasisParams& p) {
  validate(p.a1b1);
  validate(p.a1b2);
  validate(p.a2b1);
  validate(p.a2b2);
}

BasisParams BasisParams::canonical() {
  return BasisParams{{1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}};
}

ComplexMatrix sigma_x() {
  ComplexMatrix m(2);
  m.at(0, 1) = 1.0;
  m.at(1, 0) = 1.0;
  return m;
}

ComplexMatrix sigma_y() {
  ComplexMatrix m(2);
  m.at(0, 1) = Complex(0.0, -1.0);
  m.at(1, 0) = Complex(0.0, 1.0);
  return m;
}

ComplexMatrix sigma_z() {
  ComplexMatrix m(2);
  m.at(0, 0) = 1.0;
  m.at(1, 1) = -1.0;
  return m;
}

ChshObservables chsh_observables() {
  const ComplexMatrix i2 = ComplexMatrix::identity(2);
  return ChshObservables{tensor(sigma_x(), i2), tensor(sigma_z(), i2),
                         tensor(i2, bob_qubit_observable(BobSetting::kB1)),
                         tensor(i2, bob_qubit_observable(BobSetting::kB2))};
}

ProjectorFamily::ProjectorFamily(ComplexMatrix observable,
                                 const std::array<Ket, 2>& plus_basis,
                                 const std::array<Ket, 2>& minus_basis)
    : observable_(std::move(observable)),
      coarse_plus_(outer(plus_basis[0]) + outer(plus_basis[1])),
      coarse_minus_(outer(minus_basis[0]) + outer(minus_basis[1])),
      fine_plus_{outer(plus_basis[0]), outer(plus_basis[1])},
      fine_minus_{outer(minus_basis[0]), outer(minus_basis[1])} {}

const ComplexMatrix& ProjectorFamily::coarse(Outcome m) const {
  return m == Outcome::kPlus ? coarse_plus_ : coarse_minus_;
}

const std::array<ComplexMatrix, 2>& ProjectorFamily::fine(Outcome m) const {
  return m == Outcome::kPlus ? fine_plus_ : fine_minus_;
}

ProjectorFamily canonical_family(AliceSetting which) {
  const auto k = canonical_kets(which);
  return ProjectorFamily(alice_observable(which), {k[0], k[1]}, {k[2], k[3]});
}

ProjectorFamily rotated_family(AliceSetting which, const ContextBasisParams& p) {
  validate(p);
  const auto k = canonical_kets(which);
  const double re = std::sqrt(1.0 - p.eta * p.eta);
  const double rg = std::sqrt(1.0 - p.gamma * p.gamma);
  return ProjectorFamily(
      alice_observable(which),
      {combine(k[0], k[1], p.eta, re), combine(k[0], k[1], re, -p.eta)},
      {combine(k[2], k[3], p.gamma, rg), combine(k[2], k[3], rg, -p.gamma)});
}

ProjectorFamily bob_family(BobSetting which) {
  const ComplexMatrix b = bob_qubit_observable(which);
  // Eigenkets of the 2x2 Bob observable; b is a Bloch vector in the x-z
  // plane at angle theta from z, so the eigenkets live at theta/2.
  const double theta = std::numbers::pi / (which == BobSetting::kB1 ? -4.0 : 4.0);
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const Ket bp(2, {c, s});
  const Ket bm(2, {-s, c});

  auto lift = [](const Ket& alice_basis_ket, const Ket& bob_ket) {
    std::array<Complex, 4> amps{};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        amps[2 * i + j] = alice_basis_ket.amp(i) * bob_ket.amp(j);
    return Ket(4, amps);
  };
  const Ket zero(2, {1.0, 0.0});
  const Ket one(2, {0.0, 1.0});
  return ProjectorFamily(tensor(ComplexMatrix::identity(2), b),
                         {lift(zero, bp), lift(one, bp)},
                         {lift(zero, bm), lift(one, bm)});
}

}  // namespace chsh

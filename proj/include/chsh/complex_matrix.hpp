#pragma once

#include <array>
#include <complex>
#include <initializer_list>
#include <span>

namespace chsh {

using Complex = std::complex<double>;

// Tolerance applied wherever an algebraic identity is asserted.
inline constexpr double kIdentityTol = 1e-12;

class Ket;

// Dense complex square matrix, row-major. Working dimensions are 2 and 4;
// 8 is admitted so nested tensor products stay expressible. Storage is a
// fixed stack array, so values copy cheaply and never touch the heap.
class ComplexMatrix {
 public:
  static constexpr int kMaxDim = 8;

  explicit ComplexMatrix(int dim);  // zero matrix
  static ComplexMatrix identity(int dim);

  int dim() const { return dim_; }
  Complex& at(int r, int c) { return e_[r * dim_ + c]; }
  const Complex& at(int r, int c) const { return e_[r * dim_ + c]; }

  ComplexMatrix adjoint() const;
  Complex trace() const;
  bool is_finite() const;

  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(const Complex& s, const ComplexMatrix& m);
  friend ComplexMatrix operator*(double s, const ComplexMatrix& m);

 private:
  int dim_;
  std::array<Complex, kMaxDim * kMaxDim> e_{};
};

// Normalized complex column vector of dimension 2 or 4.
class Ket {
 public:
  static constexpr int kMaxDim = 4;

  // Throws Error unless the amplitudes already have norm 1 within 1e-12.
  Ket(int dim, std::span<const Complex> amplitudes);
  Ket(int dim, std::initializer_list<Complex> amplitudes);

  // Unchecked construction for transient vectors such as projector images.
  static Ket raw(int dim, std::span<const Complex> amplitudes);

  int dim() const { return dim_; }
  const Complex& amp(int i) const { return a_[i]; }
  double norm() const;

 private:
  struct Unchecked {};
  Ket(Unchecked, int dim, std::span<const Complex> amplitudes);

  int dim_;
  std::array<Complex, kMaxDim> a_{};
};

// Kronecker product; dim of the result is a.dim * b.dim. Basis order is
// |00>, |01>, |10>, |11> with the first factor belonging to Alice.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

// |k><k| for a normalized k (throws Error otherwise).
ComplexMatrix outer(const Ket& k);

// Trace over the second factor: 4x4 -> 2x2. For rho_A (x) rho_B this gives
// rho_A * trace(rho_B).
ComplexMatrix partial_trace_second(const ComplexMatrix& m);

// m * k. The result is not renormalized.
Ket apply(const ComplexMatrix& m, const Ket& k);

double purity(const ComplexMatrix& m);  // Re Tr[m^2]

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b,
                  double tol = kIdentityTol);
bool is_hermitian(const ComplexMatrix& m, double tol = kIdentityTol);
bool is_projector(const ComplexMatrix& m, double tol = kIdentityTol);
bool is_unit_trace(const ComplexMatrix& m, double tol = kIdentityTol);

}  // namespace chsh

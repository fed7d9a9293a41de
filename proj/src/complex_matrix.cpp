#include "chsh/complex_matrix.hpp"

#include <cassert>
#include <cmath>

#include "chsh/errors.hpp"

namespace chsh {

namespace {

void check_matrix_dim(int dim) {
  if (dim != 2 && dim != 4 && dim != 8) {
    throw Error("matrix dimension must be 2, 4 or 8, got " + std::to_string(dim));
  }
}

void check_ket_dim(int dim) {
  if (dim != 2 && dim != 4) {
    throw Error("ket dimension must be 2 or 4, got " + std::to_string(dim));
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim) { check_matrix_dim(dim); }

ComplexMatrix ComplexMatrix::identity(int dim) {
  ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) r.at(i, j) = std::conj(at(j, i));
  return r;
}

Complex ComplexMatrix::trace() const {
  Complex s = 0.0;
  for (int i = 0; i < dim_; ++i) s += at(i, i);
  return s;
}

bool ComplexMatrix::is_finite() const {
  for (int i = 0; i < dim_ * dim_; ++i) {
    if (!std::isfinite(e_[i].real()) || !std::isfinite(e_[i].imag())) return false;
  }
  return true;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  assert(a.dim_ == b.dim_);
  ComplexMatrix r(a.dim_);
  for (int i = 0; i < a.dim_ * a.dim_; ++i) r.e_[i] = a.e_[i] + b.e_[i];
  return r;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  assert(a.dim_ == b.dim_);
  ComplexMatrix r(a.dim_);
  for (int i = 0; i < a.dim_ * a.dim_; ++i) r.e_[i] = a.e_[i] - b.e_[i];
  return r;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  assert(a.dim_ == b.dim_);
  const int n = a.dim_;
  ComplexMatrix r(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const Complex aik = a.at(i, k);
      if (aik == Complex{}) continue;
      for (int j = 0; j < n; ++j) r.at(i, j) += aik * b.at(k, j);
    }
  }
  return r;
}

ComplexMatrix operator*(const Complex& s, const ComplexMatrix& m) {
  ComplexMatrix r(m.dim_);
  for (int i = 0; i < m.dim_ * m.dim_; ++i) r.e_[i] = s * m.e_[i];
  return r;
}

ComplexMatrix operator*(double s, const ComplexMatrix& m) {
  return Complex(s, 0.0) * m;
}

Ket::Ket(Unchecked, int dim, std::span<const Complex> amplitudes) : dim_(dim) {
  check_ket_dim(dim);
  if (static_cast<int>(amplitudes.size()) != dim) {
    throw Error("ket amplitude count does not match dimension");
  }
  for (int i = 0; i < dim; ++i) a_[i] = amplitudes[i];
}

Ket::Ket(int dim, std::span<const Complex> amplitudes)
    : Ket(Unchecked{}, dim, amplitudes) {
  if (std::abs(norm() - 1.0) > kIdentityTol) {
    throw Error("ket is not normalized");
  }
}

Ket::Ket(int dim, std::initializer_list<Complex> amplitudes)
    : Ket(dim, std::span<const Complex>(amplitudes.begin(), amplitudes.size())) {}

Ket Ket::raw(int dim, std::span<const Complex> amplitudes) {
  return Ket(Unchecked{}, dim, amplitudes);
}

double Ket::norm() const {
  double s = 0.0;
  for (int i = 0; i < dim_; ++i) s += std::norm(a_[i]);
  return std::sqrt(s);
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  const int n = a.dim() * b.dim();
  if (n > ComplexMatrix::kMaxDim) throw Error("tensor product exceeds max dimension");
  ComplexMatrix r(n);
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      for (int k = 0; k < b.dim(); ++k)
        for (int l = 0; l < b.dim(); ++l)
          r.at(i * b.dim() + k, j * b.dim() + l) = a.at(i, j) * b.at(k, l);
  return r;
}

ComplexMatrix outer(const Ket& k) {
  if (std::abs(k.norm() - 1.0) > kIdentityTol) {
    throw Error("outer product requires a normalized ket");
  }
  ComplexMatrix r(k.dim());
  for (int i = 0; i < k.dim(); ++i)
    for (int j = 0; j < k.dim(); ++j) r.at(i, j) = k.amp(i) * std::conj(k.amp(j));
  return r;
}

ComplexMatrix partial_trace_second(const ComplexMatrix& m) {
  if (m.dim() != 4) throw Error("partial_trace_second expects a 4x4 matrix");
  ComplexMatrix r(2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) r.at(i, j) += m.at(2 * i + k, 2 * j + k);
  return r;
}

Ket apply(const ComplexMatrix& m, const Ket& k) {
  if (m.dim() != k.dim()) throw Error("matrix/ket dimension mismatch");
  std::array<Complex, Ket::kMaxDim> out{};
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) out[i] += m.at(i, j) * k.amp(j);
  return Ket::raw(m.dim(), std::span<const Complex>(out.data(), m.dim()));
}

double purity(const ComplexMatrix& m) {
  Complex s = 0.0;
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) s += m.at(i, j) * m.at(j, i);
  return s.real();
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  assert(a.dim() == b.dim());
  double worst = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      worst = std::max(worst, std::abs(a.at(i, j) - b.at(i, j)));
  return worst;
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  return a.dim() == b.dim() && max_abs_diff(a, b) <= tol;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return max_abs_diff(m, m.adjoint()) <= tol;
}

bool is_projector(const ComplexMatrix& m, double tol) {
  return is_hermitian(m, tol) && max_abs_diff(m * m, m) <= tol;
}

bool is_unit_trace(const ComplexMatrix& m, double tol) {
  return std::abs(m.trace() - Complex(1.0)) <= tol;
}

}  // namespace chsh

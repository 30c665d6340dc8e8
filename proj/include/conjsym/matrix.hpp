#pragma once

// Dense complex matrix carrier and the elementary operations every other
// module builds on. Matrices are Eigen::MatrixXcd; the free functions here add
// the dimension checks and conventions the rest of the library relies on.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>

#include "conjsym/errors.hpp"

namespace conjsym {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

inline std::string shape_string(const ComplexMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

inline void require_square(const ComplexMatrix& m, const char* what = "matrix") {
  if (m.rows() != m.cols())
    throw NotSquare(std::string(what) + " must be square, got " + shape_string(m));
}

inline void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch(std::string(what) + ": " + shape_string(a) + " vs " + shape_string(b));
}

inline void require_finite(const ComplexMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw NonFiniteValue("matrix contains a NaN or infinite entry");
  }
}

inline ComplexMatrix identity(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows())
    throw DimensionMismatch("matmul: " + shape_string(a) + " * " + shape_string(b));
  return a * b;
}

inline ComplexMatrix adjoint(const ComplexMatrix& m) { return m.adjoint(); }
inline ComplexMatrix transpose(const ComplexMatrix& m) { return m.transpose(); }
inline ComplexMatrix entrywise_conj(const ComplexMatrix& m) { return m.conjugate(); }

// All residuals in the library are Frobenius norms.
inline double frobenius(const ComplexMatrix& m) { return m.norm(); }

inline double operator_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

inline double symmetry_residual(const ComplexMatrix& m) {
  require_square(m);
  return (m - m.transpose()).norm();
}

struct UnitaryCheckReport {
  double residual = 0.0;
  bool is_unitary = false;
};

inline UnitaryCheckReport check_unitary(const ComplexMatrix& m, double tol) {
  require_square(m);
  const double residual = (m.adjoint() * m - identity(m.rows())).norm();
  return {residual, residual <= tol};
}

inline void require_unitary(const ComplexMatrix& m, double tol) {
  const auto report = check_unitary(m, tol);
  if (!report.is_unitary) throw NotUnitary(report.residual);
}

// Principal argument mapped into [0, 2*pi).
inline double arg_0_2pi(Complex z) {
  double t = std::arg(z);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t -= kTwoPi;
  return t;
}

// Shortest arc length between two points of the unit circle.
inline double arc_distance(Complex a, Complex b) {
  return std::abs(std::arg(a * std::conj(b)));
}

} // namespace conjsym

#pragma once

// Antilinear operators on C^n, stored as the matrix A of x -> A conj(x), and
// conjugations (isometric involutive antilinear maps). On C^n the conjugations
// are exactly the x -> V conj(x) with V unitary and V^t = V.

#include <utility>

#include "conjsym/matrix.hpp"
#include "conjsym/spectral_decomposition.hpp"

namespace conjsym {

class AntilinearOp {
public:
  explicit AntilinearOp(ComplexMatrix a) : a_(std::move(a)) {
    require_square(a_, "antilinear operator");
    require_finite(a_);
  }

  const ComplexMatrix& matrix() const noexcept { return a_; }
  Eigen::Index size() const noexcept { return a_.rows(); }

  ComplexVector apply(const ComplexVector& x) const {
    if (x.size() != a_.cols())
      throw DimensionMismatch("antilinear apply: operator size " + std::to_string(a_.cols()) +
                              ", vector size " + std::to_string(x.size()));
    return a_ * x.conjugate();
  }

  // Applies the map column by column.
  ComplexMatrix apply(const ComplexMatrix& x) const {
    if (x.rows() != a_.cols())
      throw DimensionMismatch("antilinear apply: " + shape_string(a_) + " on " + shape_string(x));
    return a_ * x.conjugate();
  }

private:
  ComplexMatrix a_;
};

struct ConjugationCheck {
  bool ok = false;
  double unitary_residual = 0.0;
  double symmetry_residual = 0.0;
};

inline ConjugationCheck is_conjugation(const AntilinearOp& op, double tol) {
  const auto& a = op.matrix();
  ConjugationCheck r;
  r.unitary_residual = check_unitary(a, tol).residual;
  r.symmetry_residual = symmetry_residual(a);
  r.ok = r.unitary_residual <= tol && r.symmetry_residual <= tol;
  return r;
}

class Conjugation {
public:
  static constexpr double kDefaultTol = 1e-10;

  explicit Conjugation(ComplexMatrix a, double tol = kDefaultTol) : op_(std::move(a)) {
    const auto check = is_conjugation(op_, tol);
    if (!check.ok) throw NotSymmetricUnitary(check.unitary_residual, check.symmetry_residual);
  }

  // x -> conj(x)
  static Conjugation standard(Eigen::Index n) { return Conjugation(identity(n)); }

  // Conjugation fixing every column of the unitary `basis`: matrix B B^t.
  static Conjugation fixing_basis(const ComplexMatrix& basis, double tol = kDefaultTol) {
    require_unitary(basis, tol);
    return Conjugation(basis * basis.transpose(), tol);
  }

  const ComplexMatrix& matrix() const noexcept { return op_.matrix(); }
  Eigen::Index size() const noexcept { return op_.size(); }
  const AntilinearOp& op() const noexcept { return op_; }
  operator const AntilinearOp&() const noexcept { return op_; }

  ComplexVector apply(const ComplexVector& x) const { return op_.apply(x); }
  ComplexMatrix apply(const ComplexMatrix& x) const { return op_.apply(x); }

private:
  AntilinearOp op_;
};

inline bool approx_equal(const AntilinearOp& a, const AntilinearOp& b, double tol = 1e-12) {
  if (a.size() != b.size()) return false;
  return (a.matrix() - b.matrix()).norm() <= tol;
}

// Composition table: f after g.
//   antilinear A after antilinear B -> linear A conj(B)
//   linear M after antilinear A     -> antilinear M A
//   antilinear A after linear M     -> antilinear A conj(M)
inline ComplexMatrix compose(const AntilinearOp& f, const AntilinearOp& g) {
  return matmul(f.matrix(), g.matrix().conjugate());
}

inline AntilinearOp compose(const ComplexMatrix& f, const AntilinearOp& g) {
  return AntilinearOp(matmul(f, g.matrix()));
}

inline AntilinearOp compose(const AntilinearOp& f, const ComplexMatrix& g) {
  return AntilinearOp(matmul(f.matrix(), g.conjugate()));
}

struct CSymmetryCheck {
  bool ok = false;
  double residual = 0.0; // ||C U C - U*||_F
};

// C U C is the linear map with matrix a conj(u) conj(a).
inline CSymmetryCheck is_csymmetric(const ComplexMatrix& u, const Conjugation& c, double tol) {
  require_square(u, "is_csymmetric");
  if (u.rows() != c.size())
    throw DimensionMismatch("is_csymmetric: operator " + shape_string(u) + ", conjugation size " +
                            std::to_string(c.size()));
  const auto& a = c.matrix();
  const double residual = (a * u.conjugate() * a.conjugate() - u.adjoint()).norm();
  return {residual <= tol, residual};
}

struct TakagiFactor {
  ComplexMatrix q; // unitary, v = q q^t
};

// Takagi factorization of a symmetric unitary v. Writing v = A + iB with A, B
// real symmetric, unitarity forces AB = BA, so a single real orthogonal O
// diagonalizes both: v = O diag(e^{i theta_k}) O^t. Then q = O diag(e^{i theta_k/2}),
// theta_k in [0, 2pi).
inline TakagiFactor takagi_symmetric_unitary(const ComplexMatrix& v) {
  require_square(v, "takagi_symmetric_unitary");
  require_finite(v);
  const double ures = check_unitary(v, 1e-8).residual;
  const double sres = symmetry_residual(v);
  if (ures > 1e-8 || sres > 1e-8) throw NotSymmetricUnitary(ures, sres);

  const RealMatrix re = 0.5 * (v.real() + v.real().transpose());
  const RealMatrix im = 0.5 * (v.imag() + v.imag().transpose());
  const RealMatrix o = detail::joint_eigenbasis(re, im, 1e-9);

  const ComplexMatrix oc = o.cast<Complex>();
  const ComplexMatrix diag = oc.transpose() * v * oc;
  ComplexVector half(v.rows());
  for (Eigen::Index k = 0; k < v.rows(); ++k) {
    const double theta = arg_0_2pi(diag(k, k));
    half(k) = std::polar(1.0, 0.5 * theta);
  }
  return {oc * half.asDiagonal()};
}

// Unitary whose columns form an orthonormal basis of C-real vectors (C q_k = q_k).
inline ComplexMatrix real_basis(const Conjugation& c) {
  return takagi_symmetric_unitary(c.matrix()).q;
}

} // namespace conjsym

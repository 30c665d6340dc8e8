#pragma once

#include <utility>
#include <vector>

#include "conjsym/matrix.hpp"
#include "conjsym/random.hpp"

namespace conjsym {

// Subspace of C^n held as an orthonormal column basis (n x k, k may be 0).
class Subspace {
public:
  static constexpr double kEqualityTol = 1e-8;

  static Subspace zero(Eigen::Index n) { return Subspace(ComplexMatrix(n, 0)); }
  static Subspace full(Eigen::Index n) { return Subspace(identity(n)); }

  // Takes the columns as already orthonormal (checked at 1e-10).
  static Subspace from_orthonormal(ComplexMatrix basis) {
    if (basis.cols() > 0) {
      const double r = (basis.adjoint() * basis - identity(basis.cols())).norm();
      if (r > 1e-10) throw DimensionMismatch("subspace basis is not orthonormal");
    }
    return Subspace(std::move(basis));
  }

  // Column span of an arbitrary matrix; singular values below rank_tol * max
  // are treated as zero.
  static Subspace span_of(const ComplexMatrix& vectors, double rank_tol = 1e-10) {
    const Eigen::Index n = vectors.rows();
    if (vectors.cols() == 0) return zero(n);
    Eigen::JacobiSVD<ComplexMatrix> svd(vectors, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return zero(n);
    Eigen::Index rank = 0;
    while (rank < s.size() && s(rank) > rank_tol * s(0)) ++rank;
    return Subspace(svd.matrixU().leftCols(rank));
  }

  // Orthonormalized Gaussian columns.
  static Subspace random(Rng& rng, Eigen::Index n, Eigen::Index k) {
    if (k == 0) return zero(n);
    return span_of(rng.complex_gaussian(n, k));
  }

  Eigen::Index ambient_dim() const noexcept { return basis_.rows(); }
  Eigen::Index dim() const noexcept { return basis_.cols(); }
  const ComplexMatrix& basis() const noexcept { return basis_; }

  ComplexMatrix projector() const { return basis_ * basis_.adjoint(); }

  // Largest sine of the principal angles between `other` and this subspace,
  // i.e. the spectral norm of (I - P) B_other.
  double containment_defect(const Subspace& other) const {
    check_ambient(other);
    if (other.dim() == 0) return 0.0;
    const ComplexMatrix residual = other.basis_ - basis_ * (basis_.adjoint() * other.basis_);
    return operator_norm(residual);
  }

  bool contains(const Subspace& other, double tol = kEqualityTol) const {
    check_ambient(other);
    return other.dim() <= dim() && containment_defect(other) <= tol;
  }

  bool equals(const Subspace& other, double tol = kEqualityTol) const {
    check_ambient(other);
    return dim() == other.dim() && containment_defect(other) <= tol;
  }

  Subspace orthogonal_complement() const {
    const Eigen::Index n = ambient_dim();
    if (dim() == 0) return full(n);
    if (dim() == n) return zero(n);
    const ComplexMatrix p = identity(n) - projector();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (p + p.adjoint()));
    // eigenvalues ascending: the top n - k belong to the complement
    return Subspace(es.eigenvectors().rightCols(n - dim()));
  }

  Subspace intersect(const Subspace& other, double tol = 1e-8) const {
    check_ambient(other);
    const Eigen::Index n = ambient_dim();
    if (dim() == 0 || other.dim() == 0) return zero(n);
    // x in both iff x = B y with ||(I - P_other) B y|| = 0
    const ComplexMatrix residual = basis_ - other.projector() * basis_;
    Eigen::JacobiSVD<ComplexMatrix> svd(residual, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    std::vector<Eigen::Index> keep;
    for (Eigen::Index k = 0; k < dim(); ++k) {
      const double sk = k < s.size() ? s(k) : 0.0;
      if (sk <= tol) keep.push_back(k);
    }
    if (keep.empty()) return zero(n);
    ComplexMatrix coords(dim(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i)
      coords.col(static_cast<Eigen::Index>(i)) = svd.matrixV().col(keep[i]);
    return span_of(basis_ * coords);
  }

private:
  explicit Subspace(ComplexMatrix basis) : basis_(std::move(basis)) {}

  void check_ambient(const Subspace& other) const {
    if (other.ambient_dim() != ambient_dim())
      throw DimensionMismatch("subspaces live in different ambient spaces");
  }

  ComplexMatrix basis_;
};

} // namespace conjsym

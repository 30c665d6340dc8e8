#pragma once

// The family of conjugations C with C U C = U* for a fixed unitary U.
//
// With U = W diag(xi_j I_{n_j}) W*, every member has the form
//   C = W diag(V_1, ..., V_d) J W*,
// J entrywise conjugation and each V_j an n_j x n_j symmetric unitary, and
// every such choice of blocks gives a member. As an antilinear matrix,
// C = a conj(.) with a = W diag(V_j) W^t.

#include <cstdint>
#include <utility>
#include <vector>

#include "conjsym/antilinear.hpp"
#include "conjsym/random.hpp"
#include "conjsym/spectral.hpp"

namespace conjsym {

using BlockList = std::vector<ComplexMatrix>;

struct ConjugationParametrization {
  UnitarySpectralDecomposition dec;
  std::vector<std::size_t> block_dims;

  explicit ConjugationParametrization(UnitarySpectralDecomposition d)
      : dec(std::move(d)), block_dims(dec.multiplicities()) {}

  Eigen::Index dim() const { return dec.dim(); }
  std::size_t block_count() const { return block_dims.size(); }

  // Real dimension of the family: an m x m symmetric unitary has m(m+1)/2 parameters.
  std::size_t real_parameter_count() const {
    std::size_t total = 0;
    for (std::size_t m : block_dims) total += m * (m + 1) / 2;
    return total;
  }
};

inline ConjugationParametrization parametrize(const ComplexMatrix& u, double cluster_tol = 1e-8) {
  return ConjugationParametrization(spectral_decompose_unitary(u, cluster_tol));
}

// A A^t with A Haar: the circular orthogonal ensemble.
inline ComplexMatrix random_symmetric_unitary(Rng& rng, Eigen::Index m) {
  const ComplexMatrix a = haar_unitary(rng, m);
  return a * a.transpose();
}

inline void validate_blocks(const ConjugationParametrization& p, const BlockList& blocks,
                            double tol) {
  if (blocks.size() != p.block_count())
    throw InvalidBlock(blocks.size(), "expected " + std::to_string(p.block_count()) + " blocks");
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    const auto& v = blocks[j];
    const auto m = static_cast<Eigen::Index>(p.block_dims[j]);
    if (v.rows() != m || v.cols() != m)
      throw InvalidBlock(j, "expected " + std::to_string(m) + "x" + std::to_string(m) + ", got " +
                                shape_string(v));
    require_finite(v);
    const double ures = check_unitary(v, tol).residual;
    if (ures > tol) throw InvalidBlock(j, "not unitary (residual " + std::to_string(ures) + ")");
    const double sres = symmetry_residual(v);
    if (sres > tol) throw InvalidBlock(j, "not symmetric (residual " + std::to_string(sres) + ")");
  }
}

inline ComplexMatrix block_diagonal(const ConjugationParametrization& p, const BlockList& blocks) {
  ComplexMatrix d = ComplexMatrix::Zero(p.dim(), p.dim());
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    const auto off = static_cast<Eigen::Index>(p.dec.clusters[j].offset);
    d.block(off, off, blocks[j].rows(), blocks[j].cols()) = blocks[j];
  }
  return d;
}

inline Conjugation build_from_blocks(const ConjugationParametrization& p, const BlockList& blocks,
                                     double tol = 1e-9) {
  validate_blocks(p, blocks, tol);
  const auto& w = p.dec.w;
  ComplexMatrix a = w * block_diagonal(p, blocks) * w.transpose();
  a = (0.5 * (a + a.transpose())).eval(); // removes rounding asymmetry only
  return Conjugation(std::move(a), tol);
}

inline BlockList identity_blocks(const ConjugationParametrization& p) {
  BlockList blocks;
  for (std::size_t m : p.block_dims) blocks.push_back(identity(static_cast<Eigen::Index>(m)));
  return blocks;
}

// All V_j = I, i.e. a = W W^t.
inline Conjugation canonical_member(const ConjugationParametrization& p) {
  return build_from_blocks(p, identity_blocks(p));
}

inline BlockList sample_blocks(const ConjugationParametrization& p, Rng& rng) {
  BlockList blocks;
  for (std::size_t m : p.block_dims)
    blocks.push_back(random_symmetric_unitary(rng, static_cast<Eigen::Index>(m)));
  return blocks;
}

inline Conjugation sample_member(const ConjugationParametrization& p, std::uint64_t seed) {
  Rng rng(seed);
  return build_from_blocks(p, sample_blocks(p, rng));
}

// Recovers V_1..V_d from a member via M = W* a conj(W); throws NotMember if M
// has off-block mass above tol or a diagonal block is not symmetric unitary.
// The off-block mass is the Frobenius norm of the off-block entries above the
// diagonal.
inline BlockList extract_blocks(const ConjugationParametrization& p, const Conjugation& c,
                                double tol = 1e-9) {
  if (c.size() != p.dim())
    throw DimensionMismatch("extract_blocks: conjugation size " + std::to_string(c.size()) +
                            ", parametrization size " + std::to_string(p.dim()));
  const auto& w = p.dec.w;
  const ComplexMatrix m = w.adjoint() * c.matrix() * w.conjugate();
  ComplexMatrix off = m;
  BlockList blocks;
  double block_defect = 0.0;
  for (const auto& cl : p.dec.clusters) {
    const auto off_idx = static_cast<Eigen::Index>(cl.offset);
    const auto len = static_cast<Eigen::Index>(cl.multiplicity);
    ComplexMatrix v = m.block(off_idx, off_idx, len, len);
    off.block(off_idx, off_idx, len, len).setZero();
    block_defect = std::max(block_defect, check_unitary(v, tol).residual);
    block_defect = std::max(block_defect, symmetry_residual(v));
    blocks.push_back(std::move(v));
  }
  // M is symmetric, so each off-block pair is counted once.
  const double off_mass = off.norm() / std::sqrt(2.0);
  if (off_mass > tol || block_defect > tol) throw NotMember(off_mass, block_defect);
  return blocks;
}

struct CommutantReport {
  bool symmetric_ok = false;
  bool intertwine_ok = false;
  double symmetric_residual = 0.0;  // ||[V]^t - [V]||
  double intertwine_residual = 0.0; // ||[V][U]^t - [U][V]||
  bool holds() const { return symmetric_ok && intertwine_ok; }
};

// Writes C = V J_B with J_B the conjugation fixing the columns of `basis`,
// and checks the two matrix conditions on V in that basis. [V]_B = B* a conj(B).
inline CommutantReport commutant_conditions(const ComplexMatrix& u, const Conjugation& c,
                                            const ComplexMatrix& basis, double tol = 1e-9) {
  require_square(u, "commutant_conditions");
  if (u.rows() != c.size() || basis.rows() != u.rows() || basis.cols() != u.cols())
    throw DimensionMismatch("commutant_conditions: operator, conjugation and basis sizes differ");
  const ComplexMatrix v = basis.adjoint() * c.matrix() * basis.conjugate();
  const ComplexMatrix ub = basis.adjoint() * u * basis;
  CommutantReport r;
  r.symmetric_residual = (v.transpose() - v).norm();
  r.intertwine_residual = (v * ub.transpose() - ub * v).norm();
  r.symmetric_ok = r.symmetric_residual <= tol;
  r.intertwine_ok = r.intertwine_residual <= tol;
  return r;
}

struct UnitaryFactorization {
  Conjugation j1;
  Conjugation j2;
  double product_residual = 0.0; // ||J1 J2 - U||
};

// U = J1 J2 with J1 the canonical member and J2 = U* J1.
inline UnitaryFactorization factor_unitary(const ComplexMatrix& u, double cluster_tol = 1e-8) {
  const auto p = parametrize(u, cluster_tol);
  Conjugation j1 = canonical_member(p);
  const AntilinearOp j2_op = compose(ComplexMatrix(u.adjoint()), j1.op());
  ComplexMatrix a2 = j2_op.matrix();
  a2 = (0.5 * (a2 + a2.transpose())).eval();
  Conjugation j2(std::move(a2), 1e-9);
  const double residual = (compose(j1.op(), j2.op()) - u).norm();
  return {std::move(j1), std::move(j2), residual};
}

// W C W*, antilinear matrix w a w^t.
inline Conjugation transport_family(const ComplexMatrix& w, const Conjugation& c) {
  require_square(w, "transport_family");
  require_unitary(w, 1e-9);
  if (w.rows() != c.size()) throw DimensionMismatch("transport_family: sizes differ");
  ComplexMatrix a = w * c.matrix() * w.transpose();
  a = (0.5 * (a + a.transpose())).eval();
  return Conjugation(std::move(a), 1e-9);
}

struct SpectralCommutationReport {
  bool ok = false;
  double max_residual = 0.0; // max_j ||C P_j C - P_j||
};

// C E C is the linear map a conj(E) conj(a).
inline double spectral_commutation_residual(const Conjugation& c, const ComplexMatrix& e) {
  const auto& a = c.matrix();
  return (a * e.conjugate() * a.conjugate() - e).norm();
}

inline SpectralCommutationReport check_spectral_commutation(const UnitarySpectralDecomposition& dec,
                                                            const Conjugation& c,
                                                            double tol = 1e-9) {
  if (c.size() != dec.dim()) throw DimensionMismatch("check_spectral_commutation: sizes differ");
  SpectralCommutationReport r;
  for (std::size_t j = 0; j < dec.cluster_count(); ++j)
    r.max_residual = std::max(r.max_residual,
                              spectral_commutation_residual(c, cluster_projection(dec, j)));
  r.ok = r.max_residual <= tol;
  return r;
}

inline SpectralCommutationReport check_spectral_commutation(const ComplexMatrix& u,
                                                            const Conjugation& c,
                                                            double tol = 1e-9,
                                                            double cluster_tol = 1e-8) {
  return check_spectral_commutation(spectral_decompose_unitary(u, cluster_tol), c, tol);
}

} // namespace conjsym

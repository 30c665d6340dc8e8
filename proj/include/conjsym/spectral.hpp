#pragma once

// Spectral projections, atomic elementary measures and the measure lattice
// over the finite spectrum of a unitary matrix. Borel sets of the circle
// collapse to subsets of the cluster index set.

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>

#include "conjsym/spectral_decomposition.hpp"
#include "conjsym/subspace.hpp"

namespace conjsym {

class SpectralSet {
public:
  SpectralSet(std::size_t cluster_count, std::set<std::size_t> members)
      : cluster_count_(cluster_count), members_(std::move(members)) {
    for (std::size_t j : members_)
      if (j >= cluster_count_)
        throw IndexOutOfRange("cluster index " + std::to_string(j) + " out of range (d = " +
                              std::to_string(cluster_count_) + ")");
  }

  static SpectralSet empty(std::size_t d) { return SpectralSet(d, {}); }
  static SpectralSet all(std::size_t d) {
    std::set<std::size_t> m;
    for (std::size_t j = 0; j < d; ++j) m.insert(j);
    return SpectralSet(d, std::move(m));
  }
  // Bit j of mask selects cluster j.
  static SpectralSet from_mask(std::size_t d, std::uint64_t mask) {
    std::set<std::size_t> m;
    for (std::size_t j = 0; j < d && j < 64; ++j)
      if ((mask >> j) & 1U) m.insert(j);
    return SpectralSet(d, std::move(m));
  }

  std::size_t cluster_count() const noexcept { return cluster_count_; }
  const std::set<std::size_t>& members() const noexcept { return members_; }
  bool contains(std::size_t j) const { return members_.count(j) > 0; }

  std::uint64_t mask() const {
    std::uint64_t m = 0;
    for (std::size_t j : members_)
      if (j < 64) m |= (std::uint64_t{1} << j);
    return m;
  }

  SpectralSet complement() const {
    std::set<std::size_t> m;
    for (std::size_t j = 0; j < cluster_count_; ++j)
      if (!contains(j)) m.insert(j);
    return SpectralSet(cluster_count_, std::move(m));
  }

  SpectralSet intersect(const SpectralSet& other) const {
    if (other.cluster_count_ != cluster_count_)
      throw ClusterSetMismatch("spectral sets over different cluster counts");
    std::set<std::size_t> m;
    std::set_intersection(members_.begin(), members_.end(), other.members_.begin(),
                          other.members_.end(), std::inserter(m, m.begin()));
    return SpectralSet(cluster_count_, std::move(m));
  }

  bool operator==(const SpectralSet&) const = default;

private:
  std::size_t cluster_count_;
  std::set<std::size_t> members_;
};

// Finite positive measure on the cluster set. Zero-mass atoms are never stored.
class AtomicMeasure {
public:
  explicit AtomicMeasure(std::size_t cluster_count) : cluster_count_(cluster_count) {}

  AtomicMeasure(std::size_t cluster_count, const std::map<std::size_t, double>& atoms)
      : cluster_count_(cluster_count) {
    for (const auto& [j, mass] : atoms) set(j, mass);
  }

  void set(std::size_t j, double mass) {
    if (j >= cluster_count_)
      throw IndexOutOfRange("atom index " + std::to_string(j) + " out of range (d = " +
                            std::to_string(cluster_count_) + ")");
    if (!std::isfinite(mass) || mass < 0.0)
      throw RangeError("atom masses must be finite and nonnegative");
    if (mass == 0.0)
      atoms_.erase(j);
    else
      atoms_[j] = mass;
  }

  double mass(std::size_t j) const {
    const auto it = atoms_.find(j);
    return it == atoms_.end() ? 0.0 : it->second;
  }

  double total() const {
    double t = 0.0;
    for (const auto& [j, m] : atoms_) t += m;
    return t;
  }

  std::size_t cluster_count() const noexcept { return cluster_count_; }
  const std::map<std::size_t, double>& atoms() const noexcept { return atoms_; }
  bool is_zero() const noexcept { return atoms_.empty(); }

  SpectralSet support() const {
    std::set<std::size_t> s;
    for (const auto& [j, m] : atoms_) s.insert(j);
    return SpectralSet(cluster_count_, std::move(s));
  }

  bool operator==(const AtomicMeasure&) const = default;

private:
  std::size_t cluster_count_;
  std::map<std::size_t, double> atoms_;
};

// Unit mass on each cluster of omega.
inline AtomicMeasure counting_measure(const SpectralSet& omega) {
  AtomicMeasure m(omega.cluster_count());
  for (std::size_t j : omega.members()) m.set(j, 1.0);
  return m;
}

// Point mass at the cluster matching alpha.
inline AtomicMeasure point_mass(const UnitarySpectralDecomposition& dec, Complex alpha,
                                double tol = 1e-8) {
  AtomicMeasure m(dec.cluster_count());
  if (const auto j = dec.find_cluster(alpha, tol)) m.set(*j, 1.0);
  return m;
}

inline ComplexMatrix cluster_projection(const UnitarySpectralDecomposition& dec, std::size_t j) {
  if (j >= dec.cluster_count())
    throw IndexOutOfRange("cluster index " + std::to_string(j) + " out of range");
  const ComplexMatrix b = dec.cluster_basis(j);
  return b * b.adjoint();
}

inline ComplexMatrix spectral_projection(const UnitarySpectralDecomposition& dec,
                                         const SpectralSet& omega) {
  if (omega.cluster_count() != dec.cluster_count())
    throw ClusterSetMismatch("spectral set built for a different cluster count");
  ComplexMatrix e = ComplexMatrix::Zero(dec.dim(), dec.dim());
  for (std::size_t j : omega.members()) e += cluster_projection(dec, j);
  return e;
}

// mu_x: mass ||P_j x||^2 on cluster j. Masses at or below 1e-20 ||x||^2 are
// rounding noise from projecting onto a complementary eigenspace and are dropped.
inline AtomicMeasure elementary_measure(const UnitarySpectralDecomposition& dec,
                                        const ComplexVector& x) {
  if (x.size() != dec.dim())
    throw DimensionMismatch("elementary_measure: vector size " + std::to_string(x.size()) +
                            ", space dimension " + std::to_string(dec.dim()));
  AtomicMeasure mu(dec.cluster_count());
  const double floor = 1e-20 * x.squaredNorm();
  for (std::size_t j = 0; j < dec.cluster_count(); ++j) {
    const double mass = (dec.cluster_basis(j).adjoint() * x).squaredNorm();
    if (mass > floor) mu.set(j, mass);
  }
  return mu;
}

inline void require_same_clusters(const AtomicMeasure& a, const AtomicMeasure& b) {
  if (a.cluster_count() != b.cluster_count())
    throw ClusterSetMismatch("measures live on cluster sets of size " +
                             std::to_string(a.cluster_count()) + " and " +
                             std::to_string(b.cluster_count()));
}

inline AtomicMeasure measure_join(const AtomicMeasure& a, const AtomicMeasure& b) {
  require_same_clusters(a, b);
  AtomicMeasure out = a;
  for (const auto& [j, m] : b.atoms()) out.set(j, out.mass(j) + m);
  return out;
}

// For atomic measures the infimum over partitions is attained atom by atom.
inline AtomicMeasure measure_meet(const AtomicMeasure& a, const AtomicMeasure& b) {
  require_same_clusters(a, b);
  AtomicMeasure out(a.cluster_count());
  for (const auto& [j, m] : a.atoms()) out.set(j, std::min(m, b.mass(j)));
  return out;
}

inline bool abs_continuous(const AtomicMeasure& a, const AtomicMeasure& b) {
  require_same_clusters(a, b);
  return std::all_of(a.atoms().begin(), a.atoms().end(),
                     [&](const auto& atom) { return b.mass(atom.first) > 0.0; });
}

// H_mu = {x : mu_x << mu}, the sum of the eigenspaces carrying mass under mu.
inline Subspace h_mu_subspace(const UnitarySpectralDecomposition& dec, const AtomicMeasure& mu) {
  if (mu.cluster_count() != dec.cluster_count())
    throw ClusterSetMismatch("measure built for a different cluster count");
  Eigen::Index k = 0;
  for (const auto& [j, m] : mu.atoms()) k += static_cast<Eigen::Index>(dec.clusters[j].multiplicity);
  ComplexMatrix basis(dec.dim(), k);
  Eigen::Index col = 0;
  for (const auto& [j, m] : mu.atoms()) {
    const ComplexMatrix b = dec.cluster_basis(j);
    basis.middleCols(col, b.cols()) = b;
    col += b.cols();
  }
  return Subspace::from_orthonormal(std::move(basis));
}

// E(omega) applied to the whole space.
inline Subspace spectral_subspace(const UnitarySpectralDecomposition& dec, const SpectralSet& omega) {
  return h_mu_subspace(dec, counting_measure(omega));
}

} // namespace conjsym

#pragma once

// Hyperinvariant subspaces of a unitary matrix. For U with finite spectrum
// they are exactly the spectral subspaces E(Omega)H, which are in turn the
// H_mu subspaces and the subspaces left invariant by every member of the
// conjugation family. The last characterization is checked by sampling.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "conjsym/conjfamily.hpp"
#include "conjsym/spectral.hpp"
#include "conjsym/subspace.hpp"

namespace conjsym {

struct InvarianceCheck {
  bool ok = false;
  double defect = 0.0; // ||(I - P_M) C P_M||, spectral norm
};

inline InvarianceCheck is_invariant_under_conjugation(const Subspace& m, const Conjugation& c,
                                                      double tol) {
  if (m.ambient_dim() != c.size())
    throw DimensionMismatch("is_invariant_under_conjugation: subspace in C^" +
                            std::to_string(m.ambient_dim()) + ", conjugation on C^" +
                            std::to_string(c.size()));
  const ComplexMatrix& b = m.basis();
  if (b.cols() == 0) return {true, 0.0};
  // C P_M = a conj(B) B^t; its norm is attained on the range, so the defect
  // equals ||(I - P_M) a conj(B)||.
  const ComplexMatrix image = c.matrix() * b.conjugate();
  const ComplexMatrix outside = image - b * (b.adjoint() * image);
  const double defect = operator_norm(outside);
  return {defect <= tol, defect};
}

struct LatticeMember {
  SpectralSet omega;
  Subspace subspace;
  AtomicMeasure generator; // counting measure on omega; H_generator = subspace
};

inline constexpr std::size_t kMaxLatticeClusters = 20;

inline std::vector<LatticeMember> hyperinvariant_lattice(const UnitarySpectralDecomposition& dec) {
  const std::size_t d = dec.cluster_count();
  if (d > kMaxLatticeClusters)
    throw TooManyClusters("lattice enumeration needs d <= " + std::to_string(kMaxLatticeClusters) +
                          ", got d = " + std::to_string(d));
  std::vector<LatticeMember> out;
  out.reserve(std::size_t{1} << d);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
    auto omega = SpectralSet::from_mask(d, mask);
    auto mu = counting_measure(omega);
    auto sub = h_mu_subspace(dec, mu);
    out.push_back({std::move(omega), std::move(sub), std::move(mu)});
  }
  return out;
}

// Lattice membership: m equals the spectral subspace over the clusters it
// touches. Reducing subspaces inside a cluster fail the dimension match.
inline bool in_hyperinvariant_lattice(const UnitarySpectralDecomposition& dec, const Subspace& m,
                                      double tol = Subspace::kEqualityTol) {
  std::set<std::size_t> touched;
  for (std::size_t j = 0; j < dec.cluster_count(); ++j)
    if (operator_norm(dec.cluster_basis(j).adjoint() * m.basis()) > tol) touched.insert(j);
  const Subspace spectral = spectral_subspace(dec, SpectralSet(dec.cluster_count(), touched));
  return spectral.equals(m, tol);
}

inline constexpr double kWitnessDefect = 1e-6;
inline constexpr std::size_t kDefaultWitnessSamples = 50;

struct InvarianceVerdict {
  bool invariant_all = false;
  std::optional<Conjugation> witness;
  double witness_defect = 0.0;
  double max_defect = 0.0;   // over every member tested
  std::size_t tested = 0;    // canonical member + random members actually tried
  std::size_t witness_index = 0; // 0 = canonical, k = k-th random member
};

// Tests m against the canonical member, then `samples` random members, and
// stops at the first one moving m by more than kWitnessDefect. A verdict of
// invariant_all only certifies the members tried.
inline InvarianceVerdict conjugation_invariance_test(const UnitarySpectralDecomposition& dec,
                                                     const Subspace& m, std::size_t samples,
                                                     std::uint64_t seed) {
  const ConjugationParametrization p(dec);
  Rng rng(seed);
  InvarianceVerdict v;
  for (std::size_t k = 0; k <= samples; ++k) {
    Conjugation c = k == 0 ? canonical_member(p) : build_from_blocks(p, sample_blocks(p, rng));
    const auto check = is_invariant_under_conjugation(m, c, kWitnessDefect);
    ++v.tested;
    v.max_defect = std::max(v.max_defect, check.defect);
    if (!check.ok) {
      v.witness = std::move(c);
      v.witness_defect = check.defect;
      v.witness_index = k;
      return v;
    }
  }
  v.invariant_all = true;
  return v;
}

struct LatticeAuditEntry {
  SpectralSet omega;
  Eigen::Index dim = 0;
  bool spectral_ok = false;      // equals E(omega)H
  bool h_mu_ok = false;          // equals H_mu for the counting measure on omega
  bool reducing_ok = false;      // invariant under U and U*
  bool conjugation_ok = false;   // no sampled member moves it
  double reducing_defect = 0.0;
  double max_conjugation_defect = 0.0;
  bool passed() const { return spectral_ok && h_mu_ok && reducing_ok && conjugation_ok; }
};

enum class WitnessOutcome { Witnessed, Inconclusive, InLattice };

inline const char* to_string(WitnessOutcome o) {
  switch (o) {
  case WitnessOutcome::Witnessed: return "witnessed";
  case WitnessOutcome::Inconclusive: return "INCONCLUSIVE";
  case WitnessOutcome::InLattice: return "in_lattice";
  }
  return "?";
}

struct RandomSubspaceAuditEntry {
  Eigen::Index dim = 0;
  WitnessOutcome outcome = WitnessOutcome::Inconclusive;
  std::size_t members_tested = 0;
  double witness_defect = 0.0;
  std::optional<Conjugation> witness;
};

struct EquivalenceAudit {
  std::size_t cluster_count = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<LatticeAuditEntry> lattice;
  std::vector<RandomSubspaceAuditEntry> random_subspaces;

  std::size_t lattice_failures() const {
    std::size_t f = 0;
    for (const auto& e : lattice) f += e.passed() ? 0 : 1;
    return f;
  }
  std::size_t inconclusive() const {
    std::size_t f = 0;
    for (const auto& e : random_subspaces) f += e.outcome == WitnessOutcome::Inconclusive ? 1 : 0;
    return f;
  }
  bool passed() const { return lattice_failures() == 0 && inconclusive() == 0; }
};

inline constexpr std::size_t kMaxAuditClusters = 6;

inline double reducing_defect(const ComplexMatrix& u, const Subspace& m) {
  if (m.dim() == 0) return 0.0;
  const ComplexMatrix& b = m.basis();
  const ComplexMatrix ub = u * b;
  const ComplexMatrix uab = u.adjoint() * b;
  return std::max(operator_norm(ub - b * (b.adjoint() * ub)),
                  operator_norm(uab - b * (b.adjoint() * uab)));
}

// Checks every lattice member against all four characterizations, then draws
// `samples` random subspaces (dimension uniform in [1, n-1]) and looks for a
// witness conjugation for each one outside the lattice.
inline EquivalenceAudit equivalence_audit(const UnitarySpectralDecomposition& dec, std::size_t samples,
                                          std::uint64_t seed,
                                          std::size_t witness_samples = kDefaultWitnessSamples) {
  const std::size_t d = dec.cluster_count();
  if (d > kMaxAuditClusters)
    throw TooManyClusters("equivalence audit needs d <= " + std::to_string(kMaxAuditClusters) +
                          ", got d = " + std::to_string(d));
  EquivalenceAudit audit;
  audit.cluster_count = d;
  audit.samples = samples;
  audit.seed = seed;
  Rng rng(seed);
  const ComplexMatrix u = dec.reconstruct();

  for (const auto& member : hyperinvariant_lattice(dec)) {
    LatticeAuditEntry e{member.omega};
    e.dim = member.subspace.dim();
    e.spectral_ok = Subspace::span_of(spectral_projection(dec, member.omega)).equals(member.subspace);
    e.h_mu_ok = h_mu_subspace(dec, member.generator).equals(member.subspace);
    e.reducing_defect = reducing_defect(u, member.subspace);
    e.reducing_ok = e.reducing_defect <= 1e-10;
    const auto verdict = conjugation_invariance_test(dec, member.subspace, witness_samples, rng.next_seed());
    e.conjugation_ok = verdict.invariant_all;
    e.max_conjugation_defect = verdict.max_defect;
    audit.lattice.push_back(std::move(e));
  }

  const Eigen::Index n = dec.dim();
  if (n >= 2) {
    for (std::size_t s = 0; s < samples; ++s) {
      RandomSubspaceAuditEntry r;
      r.dim = static_cast<Eigen::Index>(rng.uniform_index(1, static_cast<std::size_t>(n - 1)));
      const Subspace m = Subspace::random(rng, n, r.dim);
      const std::uint64_t member_seed = rng.next_seed();
      if (in_hyperinvariant_lattice(dec, m)) {
        r.outcome = WitnessOutcome::InLattice;
      } else {
        auto verdict = conjugation_invariance_test(dec, m, witness_samples, member_seed);
        r.members_tested = verdict.tested;
        r.witness_defect = verdict.witness_defect;
        r.outcome = verdict.witness ? WitnessOutcome::Witnessed : WitnessOutcome::Inconclusive;
        r.witness = std::move(verdict.witness);
      }
      audit.random_subspaces.push_back(std::move(r));
    }
  }
  return audit;
}

} // namespace conjsym

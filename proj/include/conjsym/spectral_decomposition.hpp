#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <vector>

#include "conjsym/matrix.hpp"

namespace conjsym {

namespace detail {

// Joint eigenbasis of two commuting self-adjoint matrices. The first is
// diagonalized outright; inside each of its eigenspaces (eigenvalues chained
// at group_tol) the restriction of the second one is diagonalized. Works over
// both real and complex scalars, so the real version yields an orthogonal
// matrix.
template <typename Matrix>
Matrix joint_eigenbasis(const Matrix& first, const Matrix& second, double group_tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> outer(first);
  Matrix q = outer.eigenvectors();
  const auto& values = outer.eigenvalues();
  const Eigen::Index n = first.rows();
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index stop = start + 1;
    while (stop < n && values(stop) - values(stop - 1) <= group_tol) ++stop;
    const Eigen::Index len = stop - start;
    if (len > 1) {
      const Matrix z = q.middleCols(start, len);
      Matrix restricted = z.adjoint() * second * z;
      restricted = (0.5 * (restricted + restricted.adjoint())).eval();
      Eigen::SelfAdjointEigenSolver<Matrix> inner(restricted);
      q.middleCols(start, len) = z * inner.eigenvectors();
    }
    start = stop;
  }
  return q;
}

inline void normalize_column_phase(ComplexMatrix& w, Eigen::Index col) {
  for (Eigen::Index i = 0; i < w.rows(); ++i) {
    const double mag = std::abs(w(i, col));
    if (mag > 1e-10) {
      w.col(col) *= std::conj(w(i, col)) / mag;
      w(i, col) = Complex(std::abs(w(i, col)), 0.0);
      return;
    }
  }
}

} // namespace detail

struct SpectralCluster {
  Complex xi;               // unimodular representative
  std::size_t multiplicity; // n_j
  std::size_t offset;       // first column of the cluster in w
};

// U = W diag(xi_j I_{n_j}) W*, clusters ordered by argument in [0, 2pi) and
// occupying contiguous column ranges of W.
struct UnitarySpectralDecomposition {
  ComplexMatrix w;
  std::vector<SpectralCluster> clusters;
  double reconstruction_residual = 0.0;

  Eigen::Index dim() const { return w.rows(); }
  std::size_t cluster_count() const { return clusters.size(); }

  ComplexMatrix cluster_basis(std::size_t j) const {
    const auto& c = clusters.at(j);
    return w.middleCols(static_cast<Eigen::Index>(c.offset),
                        static_cast<Eigen::Index>(c.multiplicity));
  }

  std::vector<std::size_t> multiplicities() const {
    std::vector<std::size_t> out;
    out.reserve(clusters.size());
    for (const auto& c : clusters) out.push_back(c.multiplicity);
    return out;
  }

  ComplexVector diagonal() const {
    ComplexVector d(dim());
    for (const auto& c : clusters)
      d.segment(static_cast<Eigen::Index>(c.offset), static_cast<Eigen::Index>(c.multiplicity))
          .setConstant(c.xi);
    return d;
  }

  ComplexMatrix reconstruct() const { return w * diagonal().asDiagonal() * w.adjoint(); }

  std::optional<std::size_t> find_cluster(Complex alpha, double tol) const {
    for (std::size_t j = 0; j < clusters.size(); ++j)
      if (std::abs(clusters[j].xi - alpha) <= tol) return j;
    return std::nullopt;
  }
};

// Builds U = W diag(values) W* for a prescribed spectrum; test fixtures and
// demos use this to get degenerate spectra on purpose.
inline ComplexMatrix unitary_with_spectrum(const ComplexMatrix& w,
                                           const std::vector<Complex>& values,
                                           const std::vector<std::size_t>& multiplicities) {
  if (values.size() != multiplicities.size())
    throw DimensionMismatch("unitary_with_spectrum: values and multiplicities differ in length");
  const std::size_t total = std::accumulate(multiplicities.begin(), multiplicities.end(), 0UL);
  if (static_cast<Eigen::Index>(total) != w.rows() || w.rows() != w.cols())
    throw DimensionMismatch("unitary_with_spectrum: multiplicities must sum to the size of w");
  ComplexVector d(w.rows());
  Eigen::Index k = 0;
  for (std::size_t j = 0; j < values.size(); ++j)
    for (std::size_t r = 0; r < multiplicities[j]; ++r) d(k++) = values[j];
  return w * d.asDiagonal() * w.adjoint();
}

inline UnitarySpectralDecomposition spectral_decompose_unitary(const ComplexMatrix& u,
                                                               double cluster_tol = 1e-8) {
  require_square(u, "spectral_decompose_unitary");
  require_finite(u);
  require_unitary(u, 1e-8);
  const Eigen::Index n = u.rows();

  const ComplexMatrix h_real = 0.5 * (u + u.adjoint());
  const ComplexMatrix h_imag = (u - u.adjoint()) / Complex(0.0, 2.0);
  const ComplexMatrix q = detail::joint_eigenbasis(h_real, h_imag, 1e-9);

  std::vector<Complex> raw(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex lambda = q.col(k).dot(u * q.col(k));
    raw[static_cast<std::size_t>(k)] = lambda / std::abs(lambda);
  }

  std::vector<std::size_t> order(raw.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return arg_0_2pi(raw[a]) < arg_0_2pi(raw[b]);
  });

  const std::size_t m = order.size();
  // gap[k] is the arc from sorted entry k to entry k+1 (cyclically).
  std::vector<double> gap(m, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    const double a = arg_0_2pi(raw[order[k]]);
    const double b = arg_0_2pi(raw[order[(k + 1) % m]]);
    gap[k] = (k + 1 < m) ? b - a : b + kTwoPi - a;
  }
  if (m == 1) gap[0] = kTwoPi;
  for (std::size_t k = 0; k < m; ++k)
    if (m > 1 && gap[k] >= 0.5 * cluster_tol && gap[k] <= 2.0 * cluster_tol)
      throw ClusteringUnstable(gap[k], cluster_tol);

  // Start the sweep right after a genuine gap so the cyclic wrap is handled.
  std::size_t first = 0;
  bool has_cut = false;
  for (std::size_t k = 0; k < m; ++k)
    if (gap[k] > cluster_tol) {
      first = (k + 1) % m;
      has_cut = true;
      break;
    }

  struct RawCluster {
    std::vector<std::size_t> members;
    Complex xi;
  };
  std::vector<RawCluster> groups;
  if (!has_cut) {
    groups.push_back({order, {}});
  } else {
    RawCluster current;
    for (std::size_t step = 0; step < m; ++step) {
      const std::size_t k = (first + step) % m;
      current.members.push_back(order[k]);
      if (gap[k] > cluster_tol) {
        groups.push_back(std::move(current));
        current = RawCluster{};
      }
    }
    if (!current.members.empty()) groups.push_back(std::move(current));
  }

  for (auto& g : groups) {
    const Complex anchor = raw[g.members.front()];
    double offset = 0.0;
    for (std::size_t idx : g.members) offset += std::arg(raw[idx] * std::conj(anchor));
    offset /= static_cast<double>(g.members.size());
    g.xi = anchor * std::polar(1.0, offset);
  }
  std::stable_sort(groups.begin(), groups.end(), [](const RawCluster& a, const RawCluster& b) {
    return arg_0_2pi(a.xi) < arg_0_2pi(b.xi);
  });

  UnitarySpectralDecomposition dec;
  dec.w.resize(n, n);
  std::size_t col = 0;
  for (const auto& g : groups) {
    dec.clusters.push_back({g.xi, g.members.size(), col});
    for (std::size_t idx : g.members) {
      dec.w.col(static_cast<Eigen::Index>(col)) = q.col(static_cast<Eigen::Index>(idx));
      detail::normalize_column_phase(dec.w, static_cast<Eigen::Index>(col));
      ++col;
    }
  }
  dec.reconstruction_residual = (u - dec.reconstruct()).norm();
  return dec;
}

} // namespace conjsym

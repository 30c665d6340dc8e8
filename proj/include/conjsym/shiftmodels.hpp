#pragma once

// Discrete models of the bilateral shift. The fine grid holds the nN-th roots
// of unity xi_k = e^{2 pi i k/(nN)}; the base grid holds the n-th roots
// zeta_l = e^{2 pi i l/n}. M_psi for psi(z) = z^N is diag(xi_k^N), and each
// base point is hit by exactly N fine points.
//
// The Wold transform splits f into N components by residue class of its DFT
// coefficients: f_r has coefficients fhat(N k + r), r = 0..N-1. Both DFTs are
// unitary, so the transform is unitary for the Euclidean norms, and
//   f(xi) = sum_r h_r(xi) f_r(xi^N),  h_r(xi) = xi^r / sqrt(N).

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "conjsym/antilinear.hpp"
#include "conjsym/spectral_decomposition.hpp"
#include "conjsym/subspace.hpp"

namespace conjsym {

// F(j, k) = e^{-2 pi i jk/n} / sqrt(n)
inline ComplexMatrix unitary_dft(Eigen::Index n) {
  if (n < 1) throw RangeError("unitary_dft: n must be >= 1");
  ComplexMatrix f(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) {
      const auto e = static_cast<double>((j * k) % n);
      f(j, k) = std::polar(scale, -kTwoPi * e / static_cast<double>(n));
    }
  return f;
}

inline Complex root_of_unity(std::size_t k, std::size_t n) {
  return std::polar(1.0, kTwoPi * static_cast<double>(k % n) / static_cast<double>(n));
}

// e_k -> e_{k+1 mod n}; equals F diag(zeta_l) F* with F = unitary_dft(n).
struct CyclicShiftModel {
  std::size_t n;
  ComplexMatrix u;
};

inline CyclicShiftModel cyclic_shift(std::size_t n) {
  if (n < 1) throw RangeError("cyclic_shift: n must be >= 1");
  const auto size = static_cast<Eigen::Index>(n);
  ComplexMatrix u = ComplexMatrix::Zero(size, size);
  for (Eigen::Index k = 0; k < size; ++k) u((k + 1) % size, k) = 1.0;
  return {n, std::move(u)};
}

class PowerShiftModel {
public:
  PowerShiftModel(std::size_t base_size, std::size_t power) : n_(base_size), power_(power) {
    if (n_ < 1 || power_ < 1) throw RangeError("shift model needs n >= 1 and N >= 1");
  }

  std::size_t base_size() const noexcept { return n_; }
  std::size_t power() const noexcept { return power_; }
  std::size_t size() const noexcept { return n_ * power_; }

  Complex grid_point(std::size_t k) const { return root_of_unity(k, size()); }
  Complex base_point(std::size_t l) const { return root_of_unity(l, n_); }

  // Arg of the base point, in (-pi, pi].
  double base_arg(std::size_t l) const {
    double t = kTwoPi * static_cast<double>(l % n_) / static_cast<double>(n_);
    if (t > kPi) t -= kTwoPi;
    return t;
  }

  // Fine point k lies over base point k mod n.
  std::size_t base_index_of(std::size_t k) const { return k % n_; }

  // h_r(xi_k) = xi_k^r / sqrt(N)
  Complex model_space_basis(std::size_t r, std::size_t k) const {
    return root_of_unity(r * k, size()) / std::sqrt(static_cast<double>(power_));
  }

  // M_psi = diag(xi_k^N)
  ComplexMatrix multiplication_operator() const {
    const auto m = static_cast<Eigen::Index>(size());
    ComplexVector d(m);
    for (Eigen::Index k = 0; k < m; ++k) d(k) = base_point(base_index_of(static_cast<std::size_t>(k)));
    return d.asDiagonal();
  }

  // The same operator on one component: diag(zeta_l).
  ComplexMatrix base_shift() const {
    const auto m = static_cast<Eigen::Index>(n_);
    ComplexVector d(m);
    for (Eigen::Index l = 0; l < m; ++l) d(l) = base_point(static_cast<std::size_t>(l));
    return d.asDiagonal();
  }

  // Stacked components index: component r, base point l -> r * n + l.
  Eigen::Index stacked_index(std::size_t r, std::size_t l) const {
    return static_cast<Eigen::Index>(r * n_ + l);
  }

private:
  std::size_t n_;
  std::size_t power_;
};

inline std::vector<ComplexVector> wold_transform(const PowerShiftModel& model, const ComplexVector& f) {
  const auto m = static_cast<Eigen::Index>(model.size());
  const auto n = static_cast<Eigen::Index>(model.base_size());
  if (f.size() != m)
    throw DimensionMismatch("wold_transform: expected length " + std::to_string(m) + ", got " +
                            std::to_string(f.size()));
  const ComplexVector coeffs = unitary_dft(m) * f;
  const ComplexMatrix base_inverse = unitary_dft(n).adjoint();
  std::vector<ComplexVector> parts;
  const auto power = static_cast<Eigen::Index>(model.power());
  for (Eigen::Index r = 0; r < power; ++r) {
    ComplexVector c(n);
    for (Eigen::Index k = 0; k < n; ++k) c(k) = coeffs(power * k + r);
    parts.push_back(base_inverse * c);
  }
  return parts;
}

inline ComplexVector wold_inverse(const PowerShiftModel& model, const std::vector<ComplexVector>& parts) {
  const auto m = static_cast<Eigen::Index>(model.size());
  const auto n = static_cast<Eigen::Index>(model.base_size());
  const auto power = static_cast<Eigen::Index>(model.power());
  if (static_cast<Eigen::Index>(parts.size()) != power)
    throw DimensionMismatch("wold_inverse: expected " + std::to_string(power) + " components");
  const ComplexMatrix base_forward = unitary_dft(n);
  ComplexVector coeffs(m);
  for (Eigen::Index r = 0; r < power; ++r) {
    const auto& part = parts[static_cast<std::size_t>(r)];
    if (part.size() != n) throw DimensionMismatch("wold_inverse: component has wrong length");
    const ComplexVector c = base_forward * part;
    for (Eigen::Index k = 0; k < n; ++k) coeffs(power * k + r) = c(k);
  }
  return unitary_dft(m).adjoint() * coeffs;
}

// Matrix of the transform into the stacked layout, assembled by a basis sweep.
inline ComplexMatrix wold_matrix(const PowerShiftModel& model) {
  const auto m = static_cast<Eigen::Index>(model.size());
  const auto n = static_cast<Eigen::Index>(model.base_size());
  ComplexMatrix w(m, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const auto parts = wold_transform(model, ComplexVector::Unit(m, k));
    for (std::size_t r = 0; r < parts.size(); ++r)
      w.block(static_cast<Eigen::Index>(r) * n, k, n, 1) = parts[r];
  }
  return w;
}

// ||W M_psi W* - (M_zeta (+) ... (+) M_zeta)||_F
inline double intertwine_check(const PowerShiftModel& model) {
  const ComplexMatrix w = wold_matrix(model);
  const ComplexMatrix lhs = w * model.multiplication_operator() * w.adjoint();
  const auto n = static_cast<Eigen::Index>(model.base_size());
  ComplexMatrix rhs = ComplexMatrix::Zero(lhs.rows(), lhs.cols());
  const ComplexMatrix base = model.base_shift();
  for (std::size_t r = 0; r < model.power(); ++r)
    rhs.block(static_cast<Eigen::Index>(r) * n, static_cast<Eigen::Index>(r) * n, n, n) = base;
  return (lhs - rhs).norm();
}

// N x N matrix per base grid point.
struct PhiSymbol {
  std::vector<ComplexMatrix> values;
};

inline void validate_phi(const PowerShiftModel& model, const PhiSymbol& phi, double tol = 1e-9) {
  if (phi.values.size() != model.base_size())
    throw InvalidPhi(phi.values.size(), "expected " + std::to_string(model.base_size()) + " grid values");
  const auto big_n = static_cast<Eigen::Index>(model.power());
  for (std::size_t l = 0; l < phi.values.size(); ++l) {
    const auto& v = phi.values[l];
    if (v.rows() != big_n || v.cols() != big_n)
      throw InvalidPhi(l, "expected " + std::to_string(big_n) + "x" + std::to_string(big_n) +
                              ", got " + shape_string(v));
    require_finite(v);
    const double ures = (v.adjoint() * v - identity(big_n)).norm();
    if (ures > tol) throw InvalidPhi(l, "Phi* Phi != I (residual " + std::to_string(ures) + ")");
    const double sres = symmetry_residual(v);
    if (sres > tol) throw InvalidPhi(l, "Phi^t != Phi (residual " + std::to_string(sres) + ")");
  }
}

// Multiplication by Phi on the stacked components.
inline ComplexMatrix stacked_symbol(const PowerShiftModel& model, const PhiSymbol& phi) {
  const auto m = static_cast<Eigen::Index>(model.size());
  ComplexMatrix out = ComplexMatrix::Zero(m, m);
  for (std::size_t l = 0; l < model.base_size(); ++l)
    for (std::size_t i = 0; i < model.power(); ++i)
      for (std::size_t j = 0; j < model.power(); ++j)
        out(model.stacked_index(i, l), model.stacked_index(j, l)) =
            phi.values[l](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return out;
}

// C = W* M_Phi J W, i.e. a = W* M_Phi conj(W).
inline Conjugation conjugation_from_phi(const PowerShiftModel& model, const PhiSymbol& phi,
                                        double tol = 1e-9) {
  validate_phi(model, phi, tol);
  const ComplexMatrix w = wold_matrix(model);
  ComplexMatrix a = w.adjoint() * stacked_symbol(model, phi) * w.conjugate();
  a = (0.5 * (a + a.transpose())).eval();
  return Conjugation(std::move(a), tol);
}

// Symbol for psi(z) = z^2:
//   phi_11 = e^{i alpha} s, phi_22 = e^{i beta} s,
//   phi_12 = phi_21 = i e^{i(alpha + beta)/2} sqrt(1 - s^2),
// with s, alpha, beta sampled on the base grid.
inline PhiSymbol z2_family(const PowerShiftModel& model, std::span<const double> s,
                           std::span<const double> alpha, std::span<const double> beta) {
  if (model.power() != 2) throw RangeError("z2_family needs a model with N = 2");
  const std::size_t n = model.base_size();
  if (s.size() != n || alpha.size() != n || beta.size() != n)
    throw DimensionMismatch("z2_family: grid functions must have one value per base point");
  PhiSymbol phi;
  const Complex i(0.0, 1.0);
  for (std::size_t l = 0; l < n; ++l) {
    if (!(s[l] >= 0.0 && s[l] <= 1.0))
      throw RangeError("z2_family: s must lie in [0, 1] (base point " + std::to_string(l) + ")");
    const double c = std::sqrt(std::max(0.0, 1.0 - s[l] * s[l]));
    ComplexMatrix v(2, 2);
    v(0, 0) = std::polar(s[l], alpha[l]);
    v(1, 1) = std::polar(s[l], beta[l]);
    v(0, 1) = v(1, 0) = i * std::polar(c, 0.5 * (alpha[l] + beta[l]));
    phi.values.push_back(std::move(v));
  }
  return phi;
}

inline std::vector<double> sample_base_grid(const PowerShiftModel& model, double (*fn)(double)) {
  std::vector<double> out(model.base_size());
  for (std::size_t l = 0; l < out.size(); ++l) out[l] = fn(model.base_arg(l));
  return out;
}

// Phi = e^{i theta} I on every base point. For N = 1 this is the M_u J family
// with constant u.
inline PhiSymbol constant_phase_symbol(const PowerShiftModel& model, double theta) {
  const auto big_n = static_cast<Eigen::Index>(model.power());
  PhiSymbol phi;
  for (std::size_t l = 0; l < model.base_size(); ++l)
    phi.values.push_back(std::polar(1.0, theta) * identity(big_n));
  return phi;
}

// N = 1: Phi(zeta_l) = u_l, unimodular.
inline PhiSymbol unimodular_symbol(const PowerShiftModel& model, std::span<const Complex> u) {
  if (model.power() != 1) throw RangeError("unimodular_symbol needs a model with N = 1");
  if (u.size() != model.base_size()) throw DimensionMismatch("unimodular_symbol: wrong length");
  PhiSymbol phi;
  for (Complex z : u) phi.values.push_back(ComplexMatrix::Constant(1, 1, z));
  return phi;
}

// Phi(t) = [[sin t, cos t], [cos t, -sin t]]. Written in the z2_family form
// with s = |sin t| in [0, 1]; the signs go into alpha and beta, whose half sum
// also fixes the sign of the off-diagonal entry.
inline PhiSymbol sincos_symbol(const PowerShiftModel& model) {
  const std::size_t n = model.base_size();
  std::vector<double> s(n), alpha(n), beta(n);
  for (std::size_t l = 0; l < n; ++l) {
    const double t = model.base_arg(l);
    const double st = std::sin(t);
    const double ct = std::cos(t);
    s[l] = std::abs(st);
    if (st >= 0.0) {
      alpha[l] = 0.0;
      beta[l] = ct >= 0.0 ? -kPi : kPi;
    } else {
      alpha[l] = kPi;
      beta[l] = ct >= 0.0 ? kTwoPi : 0.0;
    }
  }
  return z2_family(model, s, alpha, beta);
}

// s constant, alpha = lambda t, beta = -pi - lambda t.
inline PhiSymbol lambda_drift_symbol(const PowerShiftModel& model, double s, double lambda) {
  const std::size_t n = model.base_size();
  std::vector<double> sv(n, s), alpha(n), beta(n);
  for (std::size_t l = 0; l < n; ++l) {
    const double t = model.base_arg(l);
    alpha[l] = lambda * t;
    beta[l] = -kPi - lambda * t;
  }
  return z2_family(model, sv, alpha, beta);
}

struct DftReport {
  std::size_t n = 0;
  UnitarySpectralDecomposition decomposition;
  // multiplicities of 1, -1, -i, i in that order
  std::array<std::size_t, 4> quartic_multiplicities{};
  double max_quartic_deviation = 0.0; // distance of cluster values from {1, -1, i, -i}
  std::vector<std::size_t> block_dims;
  double standard_conjugation_residual = 0.0;
};

inline const std::array<Complex, 4>& quartic_roots() {
  static const std::array<Complex, 4> roots{Complex(1, 0), Complex(-1, 0), Complex(0, -1), Complex(0, 1)};
  return roots;
}

inline DftReport dft_model(std::size_t n, double cluster_tol = 1e-8) {
  if (n < 2) throw RangeError("dft_model: n must be >= 2");
  const ComplexMatrix f = unitary_dft(static_cast<Eigen::Index>(n));
  DftReport r;
  r.n = n;
  r.decomposition = spectral_decompose_unitary(f, cluster_tol);
  for (const auto& c : r.decomposition.clusters) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t which = 0;
    for (std::size_t q = 0; q < 4; ++q) {
      const double d = std::abs(c.xi - quartic_roots()[q]);
      if (d < best) {
        best = d;
        which = q;
      }
    }
    r.max_quartic_deviation = std::max(r.max_quartic_deviation, best);
    r.quartic_multiplicities[which] += c.multiplicity;
  }
  r.block_dims = r.decomposition.multiplicities();
  r.standard_conjugation_residual =
      is_csymmetric(f, Conjugation::standard(static_cast<Eigen::Index>(n)), 1e-10).residual;
  return r;
}

// H = l2(Omega1) (+) l2(Omega2) (+) l2(Omega1) over the n-th roots of unity,
// U multiplication by the grid point, C(f, g, h) = (conj h, conj g, conj f),
// K the first two summands.
struct FlipFixture {
  std::vector<std::size_t> omega1;
  std::vector<std::size_t> omega2;
  ComplexMatrix u;
  Conjugation c;
  Subspace k;
  double csymmetry_residual = 0.0;
  ComplexVector witness;        // unit vector in K
  double witness_defect = 0.0;  // ||(I - P_K) C witness||
  double operator_defect = 0.0; // ||(I - P_K) C P_K||
};

inline FlipFixture flip_example(std::size_t n, std::vector<std::size_t> omega1,
                                std::vector<std::size_t> omega2) {
  if (omega1.empty() || omega2.empty()) throw BadPartition("both parts must be nonempty");
  std::vector<int> seen(n, 0);
  for (std::size_t k : omega1) {
    if (k >= n) throw BadPartition("index " + std::to_string(k) + " outside the grid");
    ++seen[k];
  }
  for (std::size_t k : omega2) {
    if (k >= n) throw BadPartition("index " + std::to_string(k) + " outside the grid");
    ++seen[k];
  }
  for (std::size_t k = 0; k < n; ++k)
    if (seen[k] != 1) throw BadPartition("grid point " + std::to_string(k) + " is not covered exactly once");

  const auto p = static_cast<Eigen::Index>(omega1.size());
  const auto q = static_cast<Eigen::Index>(omega2.size());
  const Eigen::Index dim = 2 * p + q;
  ComplexVector d(dim);
  for (Eigen::Index i = 0; i < p; ++i) {
    d(i) = root_of_unity(omega1[static_cast<std::size_t>(i)], n);
    d(p + q + i) = d(i);
  }
  for (Eigen::Index i = 0; i < q; ++i) d(p + i) = root_of_unity(omega2[static_cast<std::size_t>(i)], n);

  ComplexMatrix a = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < p; ++i) {
    a(i, p + q + i) = 1.0;
    a(p + q + i, i) = 1.0;
  }
  for (Eigen::Index i = 0; i < q; ++i) a(p + i, p + i) = 1.0;

  ComplexMatrix k_basis = ComplexMatrix::Zero(dim, p + q);
  k_basis.topRows(p + q) = identity(p + q);

  FlipFixture fx{std::move(omega1), std::move(omega2), d.asDiagonal(), Conjugation(a),
                 Subspace::from_orthonormal(k_basis), 0.0, ComplexVector::Unit(dim, 0), 0.0, 0.0};
  fx.csymmetry_residual = is_csymmetric(fx.u, fx.c, 1e-12).residual;
  const ComplexMatrix pk = fx.k.projector();
  const ComplexMatrix outside = identity(dim) - pk;
  fx.witness_defect = (outside * fx.c.apply(fx.witness)).norm();
  fx.operator_defect = operator_norm(outside * a * pk.conjugate());
  return fx;
}

// Even/odd split of the grid: Omega1 = even indices.
inline FlipFixture flip_example(std::size_t n) {
  std::vector<std::size_t> o1, o2;
  for (std::size_t k = 0; k < n; ++k) (k % 2 == 0 ? o1 : o2).push_back(k);
  return flip_example(n, std::move(o1), std::move(o2));
}

} // namespace conjsym

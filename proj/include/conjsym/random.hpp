#pragma once

#include <cstdint>
#include <random>

#include "conjsym/matrix.hpp"

namespace conjsym {

// Seeded source of Gaussian matrices. Every random quantity in the library
// enters through one of these, so a fixed seed reproduces a run exactly.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double gaussian() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  std::uint64_t next_seed() { return engine_(); }

  std::size_t uniform_index(std::size_t lo, std::size_t hi) {
    std::uniform_int_distribution<std::size_t> dist(lo, hi);
    return dist(engine_);
  }

  // Entries are standard complex normal: real and imaginary parts N(0, 1/2).
  ComplexMatrix complex_gaussian(Eigen::Index rows, Eigen::Index cols) {
    ComplexMatrix m(rows, cols);
    const double s = std::sqrt(0.5);
    for (Eigen::Index j = 0; j < cols; ++j)
      for (Eigen::Index i = 0; i < rows; ++i) {
        const double re = gaussian();
        const double im = gaussian();
        m(i, j) = Complex(s * re, s * im);
      }
    return m;
  }

  Complex unimodular() {
    const double t = kTwoPi * uniform();
    return std::polar(1.0, t);
  }

private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

// Haar-distributed unitary: QR of a complex Gaussian matrix with the R
// diagonal normalized to be positive.
inline ComplexMatrix haar_unitary(Rng& rng, Eigen::Index n) {
  if (n < 1) throw DimensionMismatch("haar_unitary: n must be >= 1");
  const ComplexMatrix z = rng.complex_gaussian(n, n);
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ() * identity(n);
  const ComplexMatrix& r = qr.matrixQR();
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex d = r(k, k);
    const double mag = std::abs(d);
    const Complex phase = mag > 0.0 ? d / mag : Complex(1.0, 0.0);
    q.col(k) *= phase;
  }
  return q;
}

inline ComplexMatrix haar_unitary(Eigen::Index n, std::uint64_t seed) {
  Rng rng(seed);
  return haar_unitary(rng, n);
}

} // namespace conjsym

#include <catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace conjsym;
using namespace conjsym::testing;
using Catch::Matchers::WithinAbs;

namespace {

const Complex I(0, 1);

ComplexMatrix takagi_2x2_swap() {
  ComplexMatrix q(2, 2);
  q << 1.0, I, 1.0, -I;
  return q / std::sqrt(2.0);
}

Conjugation random_conjugation(Rng& rng, Eigen::Index n) {
  return Conjugation(random_symmetric_unitary(rng, n), 1e-9);
}

} // namespace

TEST_CASE("apply on hand-computed vectors", "[antilinear]") {
  ComplexVector x(2);
  x << Complex(1, 1), 2.0;
  const ComplexVector jx = Conjugation::standard(2).apply(x);
  CHECK(jx(0) == Complex(1, -1));
  CHECK(jx(1) == Complex(2, 0));

  ComplexVector y(2);
  y << I, 0.0;
  const ComplexVector sy = Conjugation(swap2()).apply(y);
  CHECK(sy(0) == Complex(0, 0));
  CHECK(sy(1) == -I);

  CHECK_THROWS_AS(Conjugation::standard(3).apply(x), DimensionMismatch);
}

TEST_CASE("apply is antilinear", "[antilinear][property]") {
  Rng rng(21);
  for (int t = 0; t < 20; ++t) {
    const AntilinearOp op(rng.complex_gaussian(5, 5));
    const ComplexVector x = rng.complex_gaussian(5, 1);
    const ComplexVector y = rng.complex_gaussian(5, 1);
    const Complex alpha(rng.gaussian(), rng.gaussian());
    CHECK((op.apply(ComplexVector(alpha * x)) - std::conj(alpha) * op.apply(x)).norm() <= 1e-12);
    CHECK((op.apply(ComplexVector(x + y)) - op.apply(x) - op.apply(y)).norm() <= 1e-12);
  }
}

TEST_CASE("composition table", "[antilinear]") {
  const Conjugation j = Conjugation::standard(3);
  CHECK((compose(j.op(), j.op()) - identity(3)).norm() == 0.0);

  const Conjugation s(swap2());
  CHECK((compose(s.op(), s.op()) - identity(2)).norm() == 0.0);

  Rng rng(5);
  const AntilinearOp a(rng.complex_gaussian(3, 3));
  const ComplexMatrix m = rng.complex_gaussian(3, 3);
  const ComplexVector x = rng.complex_gaussian(3, 1);
  // pointwise oracle for each row of the table
  CHECK((compose(m, a).apply(x) - m * a.apply(x)).norm() <= 1e-12);
  CHECK((compose(a, m).apply(x) - a.apply(ComplexVector(m * x))).norm() <= 1e-12);
  const AntilinearOp b(rng.complex_gaussian(3, 3));
  CHECK((compose(a, b) * x - a.apply(b.apply(x))).norm() <= 1e-12);

  CHECK_THROWS_AS(compose(j.op(), s.op()), DimensionMismatch);
  CHECK_THROWS_AS(compose(ComplexMatrix(identity(2)), j.op()), DimensionMismatch);
}

TEST_CASE("C o C is the identity for every conjugation", "[antilinear][property]") {
  Rng rng(8);
  for (Eigen::Index n = 1; n <= 12; ++n) {
    const Conjugation c = random_conjugation(rng, n);
    CHECK((compose(c.op(), c.op()) - identity(n)).norm() <= 1e-10);
  }
}

TEST_CASE("is_conjugation examples", "[antilinear]") {
  CHECK(is_conjugation(AntilinearOp(identity(2)), 1e-10).ok);
  CHECK(is_conjugation(AntilinearOp(swap2()), 1e-10).ok);

  ComplexMatrix j(2, 2);
  j << 0.0, 1.0, -1.0, 0.0;
  const auto r = is_conjugation(AntilinearOp(j), 1e-10);
  CHECK_FALSE(r.ok);
  // a conj(a) = -I, so C^2 = -I
  CHECK((j * j.conjugate() + identity(2)).norm() == 0.0);
  CHECK(r.unitary_residual == 0.0);
  CHECK(r.symmetry_residual > 1.0);

  CHECK_FALSE(is_conjugation(AntilinearOp(diag({2.0, 1.0})), 1e-10).ok);
  CHECK_THROWS_AS(Conjugation(j), NotSymmetricUnitary);
  CHECK_THROWS_AS(AntilinearOp(ComplexMatrix::Zero(2, 3)), NotSquare);
}

TEST_CASE("is_csymmetric examples", "[antilinear]") {
  Rng rng(2);
  const Conjugation c = random_conjugation(rng, 4);
  CHECK(is_csymmetric(identity(4), c, 1e-10).ok);

  const ComplexMatrix f4 = unitary_dft(4);
  const auto r = is_csymmetric(f4, Conjugation::standard(4), 1e-10);
  CHECK(r.ok);
  CHECK(r.residual <= 1e-14);

  const auto bad = is_csymmetric(diag({1.0, -1.0}), Conjugation(swap2()), 1e-10);
  CHECK_FALSE(bad.ok);
  CHECK_THAT(bad.residual, WithinAbs((diag({-1.0, 1.0}) - diag({1.0, -1.0})).norm(), 1e-15));
  CHECK_THAT(bad.residual, WithinAbs(2.0 * std::sqrt(2.0), 1e-15));

  CHECK_THROWS_AS(is_csymmetric(identity(3), c, 1e-10), DimensionMismatch);
}

TEST_CASE("polarization identity <Cx, Cy> = <y, x>", "[antilinear][property]") {
  Rng rng(17);
  for (int t = 0; t < 30; ++t) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(t % 9);
    const Conjugation c = random_conjugation(rng, n);
    const ComplexVector x = rng.complex_gaussian(n, 1);
    const ComplexVector y = rng.complex_gaussian(n, 1);
    // <u, v> = v* u
    const Complex lhs = c.apply(y).dot(c.apply(x));
    const Complex rhs = x.dot(y);
    CHECK(std::abs(lhs - rhs) <= 1e-10);
  }
}

TEST_CASE("V C V* is a conjugation", "[antilinear][property]") {
  Rng rng(31);
  for (int t = 0; t < 20; ++t) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(t % 7);
    const Conjugation c = random_conjugation(rng, n);
    const ComplexMatrix v = haar_unitary(rng, n);
    const AntilinearOp transferred = compose(compose(v, c.op()), ComplexMatrix(v.adjoint()));
    CHECK(is_conjugation(transferred, 1e-10).ok);
  }
}

TEST_CASE("U C is a conjugation exactly when U is C-symmetric", "[antilinear][property]") {
  Rng rng(44);
  int agree = 0;
  for (int t = 0; t < 40; ++t) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(t % 5);
    const Conjugation c = random_conjugation(rng, n);
    ComplexMatrix u;
    if (t % 2 == 0) {
      // members: U = C2 C with C2 another conjugation
      const Conjugation c2 = random_conjugation(rng, n);
      u = compose(c2.op(), c.op());
    } else {
      u = haar_unitary(rng, n);
    }
    const bool lhs = is_conjugation(compose(u, c.op()), 1e-9).ok;
    const bool rhs = is_csymmetric(u, c, 1e-9).ok;
    CHECK(lhs == rhs);
    agree += lhs ? 1 : 0;
  }
  CHECK(agree == 20);
}

TEST_CASE("Takagi factor examples", "[antilinear][takagi]") {
  const auto id = takagi_symmetric_unitary(identity(3));
  CHECK((id.q * id.q.transpose() - identity(3)).norm() <= 1e-12);

  const ComplexMatrix q = takagi_2x2_swap();
  CHECK((q * q.transpose() - swap2()).norm() <= 1e-15);
  const auto s = takagi_symmetric_unitary(swap2());
  CHECK((s.q * s.q.transpose() - swap2()).norm() <= 1e-12);
  CHECK(check_unitary(s.q, 1e-12).is_unitary);

  Rng rng(8);
  const ComplexMatrix v = random_symmetric_unitary(rng, 8);
  const auto t = takagi_symmetric_unitary(v);
  CHECK((v - t.q * t.q.transpose()).norm() <= 1e-9);

  CHECK_THROWS_AS(takagi_symmetric_unitary(diag({2.0})), NotSymmetricUnitary);
  ComplexMatrix skew(2, 2);
  skew << 0.0, 1.0, -1.0, 0.0;
  CHECK_THROWS_AS(takagi_symmetric_unitary(skew), NotSymmetricUnitary);
}

TEST_CASE("Takagi on degenerate symmetric unitaries", "[antilinear][takagi]") {
  // repeated eigenvalues: diagonal phases with multiplicity, rotated by a real orthogonal
  Rng rng(6);
  const RealMatrix g = haar_unitary(rng, 6).real();
  const RealMatrix o_real = g.householderQr().householderQ();
  const ComplexMatrix o = o_real.cast<Complex>();
  const ComplexMatrix d = diag({1.0, 1.0, I, I, I, -1.0});
  const ComplexMatrix v = o * d * o.transpose();
  const auto t = takagi_symmetric_unitary(v);
  CHECK((v - t.q * t.q.transpose()).norm() <= 1e-9);
  CHECK(check_unitary(t.q, 1e-10).is_unitary);
}

TEST_CASE("real_basis columns are fixed by C", "[antilinear][takagi]") {
  const ComplexMatrix qi = real_basis(Conjugation::standard(3));
  CHECK((Conjugation::standard(3).apply(qi) - qi).norm() <= 1e-12);

  const Conjugation s(swap2());
  const ComplexMatrix q = takagi_2x2_swap();
  CHECK((s.apply(q) - q).norm() <= 1e-15);
  const ComplexMatrix qs = real_basis(s);
  CHECK((s.apply(qs) - qs).norm() <= 1e-12);

  Rng rng(66);
  const Conjugation c = random_conjugation(rng, 6);
  const ComplexMatrix qc = real_basis(c);
  double worst = 0.0;
  for (Eigen::Index k = 0; k < 6; ++k)
    worst = std::max(worst, (c.apply(ComplexVector(qc.col(k))) - qc.col(k)).norm());
  CHECK(worst <= 1e-9);
  CHECK(check_unitary(qc, 1e-10).is_unitary);
  // C is J_B for the real basis: a = Q Q^t
  CHECK((Conjugation::fixing_basis(qc).matrix() - c.matrix()).norm() <= 1e-9);
}

TEST_CASE("approx_equal uses a 1e-12 matrix tolerance", "[antilinear]") {
  const AntilinearOp a(identity(2));
  ComplexMatrix m = identity(2);
  m(0, 0) += 1e-13;
  CHECK(approx_equal(a, AntilinearOp(m)));
  m(0, 0) += 1e-11;
  CHECK_FALSE(approx_equal(a, AntilinearOp(m)));
  CHECK_FALSE(approx_equal(a, AntilinearOp(identity(3))));
}

#include <catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace conjsym;
using namespace conjsym::testing;
using Catch::Matchers::WithinAbs;

namespace {

const Complex I(0, 1);

double member_residual(const ComplexMatrix& u, const Conjugation& c) {
  return is_csymmetric(u, c, 1e-9).residual;
}

} // namespace

TEST_CASE("parametrization shape", "[conjfamily]") {
  const auto p = parametrize(identity(3));
  CHECK(p.block_count() == 1);
  CHECK(p.block_dims == std::vector<std::size_t>{3});
  CHECK(p.real_parameter_count() == 6);

  const auto q = parametrize(diag({1.0, -1.0}));
  CHECK(q.block_dims == std::vector<std::size_t>{1, 1});
  CHECK(q.real_parameter_count() == 2);

  CHECK_THROWS_AS(parametrize(diag({2.0})), NotUnitary);
}

TEST_CASE("canonical member is W W^t with identity blocks", "[conjfamily]") {
  Rng rng(3);
  const ComplexMatrix u = random_clustered_unitary(rng, 3, 3);
  const auto p = parametrize(u);
  const Conjugation c = canonical_member(p);
  CHECK((c.matrix() - p.dec.w * p.dec.w.transpose()).norm() <= 1e-12);
  CHECK(member_residual(u, c) <= 1e-9);
  const auto blocks = extract_blocks(p, c);
  for (std::size_t j = 0; j < blocks.size(); ++j)
    CHECK((blocks[j] - identity(blocks[j].rows())).norm() <= 1e-9);
}

TEST_CASE("diag(1,-1): members are diagonal phases", "[conjfamily]") {
  const ComplexMatrix u = diag({1.0, -1.0});
  const auto p = parametrize(u);
  // brute force over a grid of the two phases
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      const double t1 = kTwoPi * a / 8.0, t2 = kTwoPi * b / 8.0;
      const BlockList blocks{ComplexMatrix::Constant(1, 1, std::polar(1.0, t1)),
                             ComplexMatrix::Constant(1, 1, std::polar(1.0, t2))};
      const Conjugation c = build_from_blocks(p, blocks);
      CHECK((c.matrix() - diag({std::polar(1.0, t1), std::polar(1.0, t2)})).norm() <= 1e-12);
      CHECK(member_residual(u, c) <= 1e-12);
    }
}

TEST_CASE("diag(lambda, lambda): standard and swap conjugations are both members", "[conjfamily]") {
  const Complex lambda = std::polar(1.0, 0.7);
  const ComplexMatrix u = diag({lambda, lambda});
  const auto p = parametrize(u);
  REQUIRE(p.block_dims == std::vector<std::size_t>{2});
  const Conjugation c1 = build_from_blocks(p, {identity(2)});
  const Conjugation c2 = build_from_blocks(p, {swap2()});
  CHECK((c1.matrix() - identity(2)).norm() <= 1e-12);
  CHECK((c2.matrix() - swap2()).norm() <= 1e-12);
  CHECK(member_residual(u, c1) <= 1e-12);
  CHECK(member_residual(u, c2) <= 1e-12);
}

TEST_CASE("invalid blocks are rejected", "[conjfamily]") {
  const auto p = parametrize(diag({1.0, -1.0}));
  CHECK_THROWS_AS(build_from_blocks(p, {identity(1)}), InvalidBlock);
  CHECK_THROWS_AS(build_from_blocks(p, {identity(1), identity(2)}), InvalidBlock);
  CHECK_THROWS_AS(build_from_blocks(p, {identity(1), diag({2.0})}), InvalidBlock);

  const auto q = parametrize(identity(2));
  ComplexMatrix skew(2, 2);
  skew << 0.0, 1.0, -1.0, 0.0;
  CHECK_THROWS_AS(build_from_blocks(q, {skew}), InvalidBlock);
  try {
    build_from_blocks(q, {skew});
  } catch (const InvalidBlock& e) {
    CHECK(std::string(e.what()).find("symmetric") != std::string::npos);
  }
}

TEST_CASE("sample_member", "[conjfamily]") {
  SECTION("simple spectrum gives unimodular scalar blocks") {
    const auto p = parametrize(diag({1.0, I, -1.0}));
    const Conjugation c = sample_member(p, 9);
    const auto blocks = extract_blocks(p, c);
    for (const auto& b : blocks) {
      REQUIRE(b.rows() == 1);
      CHECK_THAT(std::abs(b(0, 0)), WithinAbs(1.0, 1e-12));
    }
  }
  SECTION("deterministic per seed") {
    const auto p = parametrize(haar_unitary(6, 2));
    CHECK((sample_member(p, 77).matrix() - sample_member(p, 77).matrix()).norm() == 0.0);
    CHECK((sample_member(p, 77).matrix() - sample_member(p, 78).matrix()).norm() > 1e-3);
  }
  SECTION("100 samples on a Haar unitary") {
    const ComplexMatrix u = haar_unitary(12, 5);
    const auto p = parametrize(u);
    for (std::uint64_t s = 0; s < 100; ++s) CHECK(member_residual(u, sample_member(p, s)) <= 1e-9);
  }
}

TEST_CASE("extract_blocks", "[conjfamily]") {
  SECTION("swap-conj is not a member for diag(1,-1)") {
    const auto p = parametrize(diag({1.0, -1.0}));
    CHECK_THROWS_AS(extract_blocks(p, Conjugation(swap2())), NotMember);
    try {
      extract_blocks(p, Conjugation(swap2()));
    } catch (const NotMember& e) {
      CHECK_THAT(e.off_block_mass(), WithinAbs(1.0, 1e-12));
    }
  }
  SECTION("round trip on sampled members") {
    Rng rng(19);
    for (int t = 0; t < 20; ++t) {
      const ComplexMatrix u = random_clustered_unitary(rng, 1 + static_cast<std::size_t>(t % 4), 3);
      const auto p = parametrize(u);
      const BlockList blocks = sample_blocks(p, rng);
      const Conjugation c = build_from_blocks(p, blocks);
      const BlockList back = extract_blocks(p, c);
      REQUIRE(back.size() == blocks.size());
      for (std::size_t j = 0; j < blocks.size(); ++j) CHECK((back[j] - blocks[j]).norm() <= 1e-9);
      CHECK((build_from_blocks(p, back).matrix() - c.matrix()).norm() <= 1e-9);
    }
  }
  SECTION("size mismatch") {
    const auto p = parametrize(identity(2));
    CHECK_THROWS_AS(extract_blocks(p, Conjugation::standard(3)), DimensionMismatch);
  }
}

TEST_CASE("commutant conditions", "[conjfamily]") {
  SECTION("member in the standard basis") {
    Rng rng(1);
    const ComplexMatrix u = haar_unitary(rng, 5);
    const Conjugation c = sample_member(parametrize(u), 4);
    CHECK(commutant_conditions(u, c, identity(5)).holds());
  }
  SECTION("swap-conj against diag(1,-1)") {
    const auto r = commutant_conditions(diag({1.0, -1.0}), Conjugation(swap2()), identity(2));
    CHECK(r.symmetric_ok);
    CHECK_FALSE(r.intertwine_ok);
  }
  SECTION("agreement with the direct residual on random pairs") {
    Rng rng(202);
    int members = 0;
    for (int t = 0; t < 200; ++t) {
      const Eigen::Index n = 1 + static_cast<Eigen::Index>(t % 8);
      const ComplexMatrix u = haar_unitary(rng, n);
      const ComplexMatrix basis = haar_unitary(rng, n);
      const Conjugation c = t % 2 == 0 ? sample_member(parametrize(u), rng.next_seed())
                                       : Conjugation(random_symmetric_unitary(rng, n), 1e-9);
      const bool direct = is_csymmetric(u, c, 1e-9).ok;
      CHECK(commutant_conditions(u, c, basis).holds() == direct);
      members += direct ? 1 : 0;
    }
    // every odd pair is a random conjugation; for n = 1 those are members too
    CHECK(members >= 100);
  }
  SECTION("shape errors") {
    CHECK_THROWS_AS(commutant_conditions(identity(2), Conjugation::standard(3), identity(2)),
                    DimensionMismatch);
  }
}

TEST_CASE("factor_unitary", "[conjfamily]") {
  SECTION("identity") {
    const auto f = factor_unitary(identity(3));
    CHECK((f.j1.matrix() - identity(3)).norm() <= 1e-12);
    CHECK((f.j2.matrix() - identity(3)).norm() <= 1e-12);
  }
  SECTION("scalar i") {
    const auto f = factor_unitary(diag({I}));
    CHECK(std::abs(f.j1.matrix()(0, 0) - 1.0) <= 1e-12);
    CHECK(std::abs(f.j2.matrix()(0, 0) + I) <= 1e-12);
    CHECK(f.product_residual <= 1e-12);
  }
  SECTION("Haar n = 10") {
    const ComplexMatrix u = haar_unitary(10, 3);
    const auto f = factor_unitary(u);
    CHECK(f.product_residual <= 1e-9);
    CHECK(is_conjugation(f.j1, 1e-9).ok);
    CHECK(is_conjugation(f.j2, 1e-9).ok);
    CHECK(member_residual(u, f.j1) <= 1e-9);
    CHECK(member_residual(u, f.j2) <= 1e-9);
  }
  CHECK_THROWS_AS(factor_unitary(diag({2.0})), NotUnitary);
}

TEST_CASE("transport_family", "[conjfamily]") {
  Rng rng(55);
  const ComplexMatrix u = haar_unitary(rng, 6);
  const auto p = parametrize(u);
  const Conjugation c = sample_member(p, 1);
  CHECK((transport_family(identity(6), c).matrix() - c.matrix()).norm() <= 1e-12);

  const ComplexMatrix w = haar_unitary(rng, 6);
  const Conjugation moved = transport_family(w, c);
  CHECK(member_residual(w * u * w.adjoint(), moved) <= 1e-9);

  // diagonal model: members of C_s(D) are diag(phases) J; W carries them onto C_s(U)
  const auto& dec = p.dec;
  const ComplexMatrix d = dec.diagonal().asDiagonal();
  const BlockList blocks = sample_blocks(p, rng);
  const Conjugation diag_member(block_diagonal(p, blocks), 1e-9);
  CHECK(member_residual(d, diag_member) <= 1e-9);
  CHECK((transport_family(dec.w, diag_member).matrix() - build_from_blocks(p, blocks).matrix()).norm() <=
        1e-9);

  CHECK_THROWS_AS(transport_family(diag({2.0, 1.0}), Conjugation::standard(2)), NotUnitary);
}

TEST_CASE("spectral commutation", "[conjfamily]") {
  Rng rng(8);
  const ComplexMatrix u = random_clustered_unitary(rng, 3, 2);
  const auto p = parametrize(u);
  CHECK(check_spectral_commutation(p.dec, canonical_member(p)).ok);
  CHECK_FALSE(check_spectral_commutation(diag({1.0, -1.0}), Conjugation(swap2())).ok);

  int agree = 0;
  for (int t = 0; t < 100; ++t) {
    const ComplexMatrix v = random_clustered_unitary(rng, 1 + static_cast<std::size_t>(t % 4), 2);
    const auto q = parametrize(v);
    const Conjugation member = sample_member(q, rng.next_seed());
    const Conjugation other(random_symmetric_unitary(rng, v.rows()), 1e-9);
    for (const Conjugation* c : {&member, &other}) {
      const bool lhs = check_spectral_commutation(q.dec, *c).ok;
      const bool rhs = is_csymmetric(v, *c, 1e-9).ok;
      agree += lhs == rhs ? 1 : 0;
    }
  }
  CHECK(agree == 200);
}

TEST_CASE("members split along eigenspaces", "[conjfamily][property]") {
  Rng rng(61);
  for (int t = 0; t < 15; ++t) {
    const ComplexMatrix u = random_clustered_unitary(rng, 1 + static_cast<std::size_t>(t % 4), 3);
    const auto p = parametrize(u);
    const Conjugation c = sample_member(p, rng.next_seed());
    const ComplexVector x = rng.complex_gaussian(u.rows(), 1);
    for (std::size_t j = 0; j < p.block_count(); ++j) {
      const ComplexMatrix pj = cluster_projection(p.dec, j);
      const ComplexVector image = c.apply(ComplexVector(pj * x));
      CHECK(((identity(u.rows()) - pj) * image).norm() <= 1e-9);
    }
  }
}

TEST_CASE("every C-symmetric conjugation is found by block extraction", "[conjfamily][property]") {
  // two independent constructions: V J_B with commutant conditions in an eigenbasis,
  // and the block construction; both must pass extract_blocks
  Rng rng(300);
  for (int t = 0; t < 30; ++t) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(t % 6);
    const ComplexMatrix w = haar_unitary(rng, n);
    std::vector<Complex> values;
    std::vector<std::size_t> mult(static_cast<std::size_t>(n), 1);
    for (Eigen::Index k = 0; k < n; ++k) values.push_back(std::polar(1.0, kTwoPi * (static_cast<double>(k) + 0.3 * rng.uniform()) / static_cast<double>(n)));
    const ComplexMatrix u = unitary_with_spectrum(w, values, mult);
    // V diagonal in the eigenbasis with random phases: [V] commutes with [U] and is symmetric
    ComplexVector phases(n);
    for (Eigen::Index k = 0; k < n; ++k) phases(k) = rng.unimodular();
    const ComplexMatrix v_b = phases.asDiagonal();
    const Conjugation direct(w * v_b * w.transpose(), 1e-9);
    REQUIRE(commutant_conditions(u, direct, w).holds());
    REQUIRE(is_csymmetric(u, direct, 1e-9).ok);
    const auto p = parametrize(u);
    CHECK_NOTHROW(extract_blocks(p, direct));
  }
}

TEST_CASE("simple diagonal spectrum: phase grid enumeration", "[conjfamily][property]") {
  // for U diagonal with d simple eigenvalues the family is exactly diag(phases) J
  const std::vector<ComplexMatrix> cases{diag({1.0}), diag({1.0, I}), diag({1.0, I, -1.0})};
  for (const auto& u : cases) {
    const auto d = static_cast<std::size_t>(u.rows());
    const auto p = parametrize(u);
    std::size_t total = 1;
    for (std::size_t k = 0; k < d; ++k) total *= 16;
    for (std::size_t g = 0; g < total; ++g) {
      ComplexVector phases(u.rows());
      std::size_t rest = g;
      for (std::size_t k = 0; k < d; ++k) {
        phases(static_cast<Eigen::Index>(k)) = std::polar(1.0, kTwoPi * static_cast<double>(rest % 16) / 16.0);
        rest /= 16;
      }
      const Conjugation c(ComplexMatrix(phases.asDiagonal()));
      REQUIRE(is_csymmetric(u, c, 1e-9).ok);
      const auto blocks = extract_blocks(p, c);
      for (std::size_t k = 0; k < d; ++k)
        CHECK(std::abs(blocks[k](0, 0) - phases(static_cast<Eigen::Index>(k))) <= 1e-12);
    }
  }
  // a conjugation off the family is rejected
  const auto p = parametrize(diag({1.0, I}));
  CHECK_THROWS_AS(extract_blocks(p, Conjugation(swap2())), NotMember);
}

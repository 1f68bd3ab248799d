#include "test_support.hpp"

using namespace pseudoherm;
using namespace pseudoherm::testing;

namespace {

// Levels {-1 (d=2), 1+i, 1-i}; the degenerate level is level 0.
PlantedMatrix planted_degenerate_4x4(std::uint64_t seed = 3) {
  Rng rng(seed);
  return plant({{{-1, 0}, 2}, {{1, 1}, 1}, {{1, -1}, 1}}, rng);
}

CoefficientFamily random_family(const BiorthonormalSystem& sys, Rng& rng) {
  CoefficientFamily c;
  for (const auto& lv : sys.levels()) c.blocks.push_back(random_symmetric_invertible(lv.multiplicity(), rng));
  return c;
}

}  // namespace

TEST_CASE("apply conjugates its argument") {
  const auto id = AntilinearOperator::conjugation(2);
  ComplexVector z(2);
  z << kI, 0.0;
  const ComplexVector out = pseudoherm::apply(id, z);
  CHECK(std::abs(out(0) + kI) < 1e-15);
  CHECK(std::abs(out(1)) < 1e-15);

  ComplexVector xi(2);
  xi << 1.0, 0.0;
  const ComplexVector scaled = pseudoherm::apply(id, kI * xi);
  CHECK((scaled - (-kI) * pseudoherm::apply(id, xi)).norm() < 1e-15);

  CHECK_THROWS_AS((void)pseudoherm::apply(id, ComplexVector::Zero(3)), Error);
}

TEST_CASE("property: antilinearity of apply") {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const AntilinearOperator op{random_complex(3, 3, rng)};
    const ComplexVector xi = random_complex(3, 1, rng);
    const ComplexVector zeta = random_complex(3, 1, rng);
    const Complex a = random_complex(1, 1, rng)(0, 0);
    const Complex b = random_complex(1, 1, rng)(0, 0);
    const ComplexVector lhs = pseudoherm::apply(op, a * xi + b * zeta);
    const ComplexVector rhs = std::conj(a) * pseudoherm::apply(op, xi) + std::conj(b) * pseudoherm::apply(op, zeta);
    CHECK((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
  }
}

TEST_CASE("compose_antilinear") {
  const auto id = AntilinearOperator::conjugation(2);
  CHECK(max_diff(compose_antilinear(id, id), eye(2)) < 1e-15);
  const AntilinearOperator s{diag({kI, kI})};
  CHECK(max_diff(compose_antilinear(s, id), diag({kI, kI})) < 1e-15);

  Rng rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const AntilinearOperator a{random_complex(4, 4, rng)};
    const AntilinearOperator b{random_complex(4, 4, rng)};
    const ComplexVector z = random_complex(4, 1, rng);
    const ComplexVector pointwise = pseudoherm::apply(a, pseudoherm::apply(b, z));
    CHECK((compose_antilinear(a, b) * z - pointwise).norm() <= 1e-12 * pointwise.norm());
  }
  CHECK_THROWS_AS((void)compose_antilinear(id, AntilinearOperator::conjugation(3)), Error);
}

TEST_CASE("build_tau examples") {
  SUBCASE("orthonormal diagonal basis gives plain conjugation") {
    const auto sys = biorthonormal_eigensystem(diag({1, 2}));
    CHECK(max_diff(canonical_tau(sys).m, eye(2)) < 1e-15);
  }
  SUBCASE("planted non-normal 3x3 with c = 1") {
    const auto p = planted_3x3();
    const auto sys = biorthonormal_eigensystem(p.h);
    const auto tau = canonical_tau(sys);
    const ComplexMatrix phi = sys.phi();
    CHECK(max_diff(tau.m, phi * phi.transpose()) <= 1e-12 * norm(tau.m));
    CHECK(max_diff(tau.m, tau.m.transpose()) <= 1e-12 * norm(tau.m));
    CHECK(max_diff(p.h.adjoint() * tau.m, tau.m * p.h.conjugate()) <= 1e-10 * norm(p.h) * norm(tau.m));
  }
  SUBCASE("degenerate level with a swap coefficient reproduces <psi_mb|tau|psi_na> = delta c_ba") {
    const auto p = planted_degenerate_4x4();
    const auto sys = biorthonormal_eigensystem(p.h);
    REQUIRE(sys.level(0).multiplicity() == 2);
    auto c = CoefficientFamily::identity(sys);
    c.blocks[0] = mat(2, {0, 1, 1, 0});
    const auto tau = build_tau(sys, c);
    for (std::size_t mi = 0; mi < sys.size(); ++mi)
      for (std::size_t ni = 0; ni < sys.size(); ++ni) {
        const ComplexMatrix g = sys.level(mi).psi.adjoint() * tau.m * sys.level(ni).psi.conjugate();
        if (mi == ni)
          CHECK(max_diff(g, c.blocks[ni]) < 1e-10);
        else
          CHECK(max_abs(g) < 1e-10);
      }
  }
}

TEST_CASE("canonical_tau and anti-pseudo-Hermiticity") {
  SUBCASE("Hermitian H: Phi unitary, tau is a unitary congruence of conjugation") {
    Rng rng(41);
    const ComplexMatrix h = random_hermitian(4, rng);
    const auto sys = biorthonormal_eigensystem(h);
    const auto tau = canonical_tau(sys);
    CHECK(max_diff(tau.m * tau.m.adjoint(), eye(4)) < 1e-10);
    CHECK(is_anti_pseudo_hermitian(h, tau, 1e-10).passed);
  }
  SUBCASE("diag(i, -i)") {
    const ComplexMatrix h = diag({kI, -kI});
    const auto tau = canonical_tau(biorthonormal_eigensystem(h));
    CHECK(max_diff(tau.m, eye(2)) < 1e-15);
    CHECK(max_diff(h.adjoint() * tau.m, tau.m * h.conjugate()) < 1e-15);
  }
  SUBCASE("planted 4x4 with a degenerate level") {
    const auto p = planted_degenerate_4x4();
    const auto tau = canonical_tau(biorthonormal_eigensystem(p.h));
    const Check c = is_anti_pseudo_hermitian(p.h, tau, 1e-10);
    CHECK(c.passed);
    CHECK(c.residual < 1e-12);
  }
}

TEST_CASE("is_anti_pseudo_hermitian hand-computed 2x2 cases") {
  CHECK(is_anti_pseudo_hermitian(mat(2, {0, 1, 1, 0}), AntilinearOperator::conjugation(2), 1e-12).passed);
  // H = diag(1+i, 1-i): H^H m = [[0,1-i],[1+i,0]] but m conj(H) = [[0,1+i],[1-i,0]] for the swap.
  const ComplexMatrix h = diag({{1, 1}, {1, -1}});
  const AntilinearOperator swap{mat(2, {0, 1, 1, 0})};
  const Check bad = is_anti_pseudo_hermitian(h, swap, 1e-12);
  CHECK_FALSE(bad.passed);
  // Residual: max entry |2i| = 2 over ||H||_F ||m||_F = 2 * sqrt(2).
  CHECK(bad.residual == doctest::Approx(2.0 / (2.0 * std::sqrt(2.0))).epsilon(1e-12));
  CHECK(is_anti_pseudo_hermitian(h, AntilinearOperator::conjugation(2), 1e-12).passed);
  CHECK_THROWS_AS((void)is_anti_pseudo_hermitian(h, AntilinearOperator::conjugation(3), 1e-12), Error);
}

TEST_CASE("invert_tau") {
  SUBCASE("diagonal, c = 1") {
    const auto sys = biorthonormal_eigensystem(diag({1, 2}));
    const auto inv = invert_tau(sys, CoefficientFamily::identity(sys));
    CHECK(max_diff(inv.m, eye(2)) < 1e-15);
  }
  SUBCASE("planted 3x3, c = 1") {
    const auto sys = biorthonormal_eigensystem(planted_3x3().h);
    const auto c = CoefficientFamily::identity(sys);
    const auto tau = build_tau(sys, c);
    const auto inv = invert_tau(sys, c);
    CHECK(max_diff(tau.m * inv.m.conjugate(), eye(3)) < 1e-10);
    CHECK(max_diff(inv.m * tau.m.conjugate(), eye(3)) < 1e-10);
  }
  SUBCASE("degenerate level with c = diag(2, 1)") {
    const auto sys = biorthonormal_eigensystem(planted_degenerate_4x4().h);
    auto c = CoefficientFamily::identity(sys);
    c.blocks[0] = diag({2, 1});
    const auto tau = build_tau(sys, c);
    const auto inv = invert_tau(sys, c);
    CHECK(max_diff(compose_antilinear(tau, inv), eye(4)) < 1e-10);
    CHECK(max_diff(compose_antilinear(inv, tau), eye(4)) < 1e-10);
    const auto rec = recover_inverse_coefficients(sys, inv);
    CHECK(max_diff(rec.blocks[0], diag({0.5, 1})) < 1e-10);
  }
}

TEST_CASE("coefficient validation errors") {
  const auto sys = biorthonormal_eigensystem(planted_degenerate_4x4().h);
  auto c = CoefficientFamily::identity(sys);

  c.blocks[0] = mat(2, {1, 2, 3, 4});
  try {
    (void)build_tau(sys, c);
    FAIL("expected AsymmetricCoefficients");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AsymmetricCoefficients);
  }

  c.blocks[0] = mat(2, {1, 1, 1, 1});
  try {
    (void)invert_tau(sys, c);
    FAIL("expected SingularCoefficients");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularCoefficients);
  }

  c.blocks.pop_back();
  CHECK_THROWS_AS((void)build_tau(sys, c), Error);
}

TEST_CASE("property: Theorem-1 identities for random coefficient families") {
  Rng rng(2718);
  const auto ensemble = planted_ensemble(24, 77, 2, 8);
  for (const auto& p : ensemble) {
    const auto sys = biorthonormal_eigensystem(p.h);
    const auto c = random_family(sys, rng);
    const auto tau = build_tau(sys, c);
    const auto inv = invert_tau(sys, c);
    const auto n = sys.dim();

    CHECK(anti_hermiticity_residual(tau) <= 1e-12);
    CHECK(is_anti_pseudo_hermitian(p.h, tau, 1e-9).passed);
    CHECK(max_diff(compose_antilinear(tau, inv), eye(n)) <= 1e-9);
    CHECK(max_diff(compose_antilinear(inv, tau), eye(n)) <= 1e-9);

    const auto rec = recover_coefficients(sys, tau);
    const auto rec_inv = recover_inverse_coefficients(sys, inv);
    for (std::size_t k = 0; k < sys.size(); ++k) {
      CHECK(max_diff(rec.blocks[k], c.blocks[k]) <= 1e-9 * norm(c.blocks[k]));
      CHECK(max_diff(rec_inv.blocks[k], c.blocks[k].inverse()) <= 1e-9 * norm(c.blocks[k].inverse()));
      // tau |psi_{n,a}> = sum_b c_ba |phi_{n,b}>
      const auto& lv = sys.level(k);
      CHECK(max_diff(tau.m * lv.psi.conjugate(), lv.phi * c.blocks[k]) <= 1e-9 * norm(tau.m));
    }
  }
}

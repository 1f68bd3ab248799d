#include "test_support.hpp"

using namespace pseudoherm;
using namespace pseudoherm::testing;

TEST_CASE("identity is a single degenerate level") {
  const auto sys = biorthonormal_eigensystem(eye(2), {.tol = 1e-10});
  REQUIRE(sys.size() == 1);
  CHECK(std::abs(sys.level(0).energy - Complex(1, 0)) < 1e-14);
  CHECK(sys.level(0).multiplicity() == 2);
  // Orthonormal psi of the identity is unitary and phi = psi, so Psi Phi^H = 1 both ways.
  CHECK(max_diff(sys.psi().adjoint() * sys.psi(), eye(2)) < 1e-14);
  CHECK(max_diff(sys.phi(), sys.psi()) < 1e-14);
}

TEST_CASE("diagonal matrix gives unit eigenvectors") {
  const auto sys = biorthonormal_eigensystem(diag({1, 2}));
  REQUIRE(sys.size() == 2);
  CHECK(std::abs(sys.level(0).energy - 1.0) < 1e-14);
  CHECK(std::abs(sys.level(1).energy - 2.0) < 1e-14);
  // Up to phase, psi and phi are the standard basis vectors.
  CHECK(std::abs(std::abs(sys.level(0).psi(0, 0)) - 1.0) < 1e-14);
  CHECK(std::abs(std::abs(sys.level(1).psi(1, 0)) - 1.0) < 1e-14);
  CHECK(max_diff(sys.phi().adjoint() * sys.psi(), eye(2)) < 1e-14);
}

TEST_CASE("planted 3x3 recovers the planted spectrum") {
  const auto p = planted_3x3();
  const auto sys = biorthonormal_eigensystem(p.h);
  REQUIRE(sys.size() == 3);
  CHECK(max_distance(eigenvalues_of(sys), p.sorted_eigenvalues()) < 1e-10);

  const ComplexMatrix ps = sys.psi();
  const ComplexMatrix ph = sys.phi();
  CHECK(max_diff(ph.adjoint() * ps, eye(3)) < 1e-10);
  CHECK(max_diff(ps * ph.adjoint(), eye(3)) < 1e-10);
  CHECK(eigen_residual(p.h, sys) < 1e-12);
  // Level order is (Re E, Im E).
  CHECK(sys.level(0).energy.imag() < sys.level(1).energy.imag());
  CHECK(std::abs(sys.level(2).energy - 3.0) < 1e-10);
}

TEST_CASE("degenerate planted levels are grouped with their multiplicity") {
  Rng rng(11);
  const auto p = plant({{{-1, 0}, 2}, {{0.5, 0.7}, 3}, {{0.5, -0.7}, 3}, {{2, 0}, 1}}, rng);
  const auto sys = biorthonormal_eigensystem(p.h);
  REQUIRE(sys.size() == 4);
  std::vector<Eigen::Index> mults;
  for (const auto& lv : sys.levels()) mults.push_back(lv.multiplicity());
  CHECK(mults == std::vector<Eigen::Index>{2, 3, 3, 1});
  CHECK(sys.biorthonormality_residual() < 1e-10);
  // psi columns within a level are orthonormal.
  for (const auto& lv : sys.levels())
    CHECK(max_diff(lv.psi.adjoint() * lv.psi, eye(lv.multiplicity())) < 1e-12);
}

TEST_CASE("reconstruct returns H and H^H") {
  SUBCASE("diagonal") {
    const auto sys = biorthonormal_eigensystem(diag({1, 2}));
    CHECK(max_diff(reconstruct(sys, false), diag({1, 2})) < 1e-14);
  }
  SUBCASE("conjugation of a diagonal") {
    const auto sys = biorthonormal_eigensystem(diag({kI, -kI}));
    CHECK(max_diff(reconstruct(sys, true), diag({-kI, kI})) < 1e-14);
  }
  SUBCASE("planted 3x3 against explicit conjugate transpose") {
    const auto p = planted_3x3();
    const auto sys = biorthonormal_eigensystem(p.h);
    const double scale = norm(p.h);
    CHECK(max_diff(reconstruct(sys, false), p.h) <= 1e-10 * scale);
    CHECK(max_diff(reconstruct(sys, true), p.h.adjoint()) <= 1e-10 * scale);
  }
}

TEST_CASE("errors") {
  SUBCASE("non-finite input") {
    ComplexMatrix h = eye(2);
    h(0, 1) = std::numeric_limits<double>::quiet_NaN();
    try {
      (void)biorthonormal_eigensystem(h);
      FAIL("expected NonFinite");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NonFinite);
    }
  }
  SUBCASE("Jordan block is rejected") {
    const ComplexMatrix j = mat(2, {1, 1, 0, 1});
    try {
      (void)biorthonormal_eigensystem(j);
      FAIL("expected NotDiagonalizable");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotDiagonalizable);
    }
  }
  SUBCASE("non-square input") {
    CHECK_THROWS_AS((void)biorthonormal_eigensystem(ComplexMatrix::Zero(2, 3)), Error);
  }
  SUBCASE("eigenvector condition ceiling is configurable") {
    // [[1, a], [0, 1 + d]] has eigenvector condition ~ a / d.
    const ComplexMatrix h = mat(2, {1, 1e3, 0, 1.001});
    CHECK_NOTHROW((void)biorthonormal_eigensystem(h, {.tol = 1e-8}));
    CHECK_THROWS_AS((void)biorthonormal_eigensystem(h, {.tol = 1e-8, .cond_ceiling = 1e4}), Error);
  }
}

TEST_CASE("cluster gap decides grouping") {
  const ComplexMatrix h = diag({1.0, 1.0 + 1e-6, 3.0});
  CHECK(biorthonormal_eigensystem(h).size() == 3);
  CHECK(biorthonormal_eigensystem(h, {.tol = 1e-5, .cluster_gap = 1e-5}).size() == 2);
}

TEST_CASE("classify_spectrum examples") {
  SUBCASE("all real") {
    const auto cls = classify_spectrum(biorthonormal_eigensystem(diag({1, 2, 3})));
    CHECK(cls.tag == SpectrumTag::AllReal);
    CHECK(cls.pairing == std::vector<std::size_t>{0, 1, 2});
  }
  SUBCASE("conjugate pair swaps the first two levels") {
    const auto cls = classify_spectrum(biorthonormal_eigensystem(diag({{1, 2}, {1, -2}, 3})));
    CHECK(cls.tag == SpectrumTag::ConjugatePaired);
    CHECK(cls.pairing == std::vector<std::size_t>{1, 0, 2});
  }
  SUBCASE("unpaired") {
    const auto cls = classify_spectrum(biorthonormal_eigensystem(diag({{1, 2}, 3})));
    CHECK(cls.tag == SpectrumTag::Unpaired);
    CHECK(cls.unpaired[0]);
  }
  SUBCASE("degeneracy mismatch is not a pair") {
    const auto cls = classify_spectrum(biorthonormal_eigensystem(diag({{1, 2}, {1, 2}, {1, -2}})));
    CHECK(cls.tag == SpectrumTag::Unpaired);
  }
  SUBCASE("ambiguous pairing") {
    // Two levels inside the realness tolerance of the same conjugate.
    const auto sys = biorthonormal_eigensystem(diag({{1, 2}, {1, -2}, {1.05, -2}}), {.cluster_gap = 1e-3});
    try {
      (void)classify_spectrum(sys, 0.1);
      FAIL("expected AmbiguousPairing");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::AmbiguousPairing);
    }
  }
}

TEST_CASE("property: biorthonormality and reconstruction over planted matrices") {
  const auto ensemble = planted_ensemble(30, 2024, 1, 9);
  for (const auto& p : ensemble) {
    const auto sys = biorthonormal_eigensystem(p.h);
    const double scale = norm(p.h);
    CHECK(sys.biorthonormality_residual() <= 1e-10);
    CHECK(eigen_residual(p.h, sys) <= 1e-10);
    CHECK(max_diff(reconstruct(sys, false), p.h) <= 1e-10 * scale);
    CHECK(max_diff(reconstruct(sys, true), p.h.adjoint()) <= 1e-10 * scale);
    CHECK(max_distance(eigenvalues_of(sys), p.sorted_eigenvalues()) < 1e-9);
    CHECK(classify_spectrum(sys).tag == p.expected);
  }
}

TEST_CASE("property: classification is invariant under level reordering") {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const PlantedKind kind = trial % 2 ? PlantedKind::Paired : PlantedKind::Unpaired;
    const auto p = plant_random(kind, 6, rng);
    const auto sys = biorthonormal_eigensystem(p.h);
    const auto cls = classify_spectrum(sys);

    std::vector<std::size_t> perm(sys.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<EigenLevel> shuffled;
    for (auto k : perm) shuffled.push_back(sys.level(k));
    const BiorthonormalSystem re(shuffled, sys.tol(), sys.cluster_gap(), sys.scale());
    const auto cls2 = classify_spectrum(re);

    CHECK(cls2.tag == cls.tag);
    // pairing2[i] = inv(perm)[pairing[perm[i]]]
    std::vector<std::size_t> inv(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = i;
    for (std::size_t i = 0; i < perm.size(); ++i) CHECK(cls2.pairing[i] == inv[cls.pairing[perm[i]]]);
  }
}

TEST_CASE("property: Hermitian input is AllReal") {
  Rng rng(99);
  for (int n = 1; n <= 8; ++n) {
    const auto sys = biorthonormal_eigensystem(random_hermitian(n, rng));
    CHECK(classify_spectrum(sys).tag == SpectrumTag::AllReal);
    // Hermitian: phi = psi.
    CHECK(max_diff(sys.phi(), sys.psi()) < 1e-10);
  }
}

TEST_CASE("from_right_eigenvectors derives phi") {
  const auto p = planted_3x3();
  const auto sys = biorthonormal_eigensystem(p.h);
  std::vector<Complex> energies;
  std::vector<ComplexMatrix> blocks;
  for (const auto& lv : sys.levels()) {
    energies.push_back(lv.energy);
    blocks.push_back(2.0 * lv.psi);
  }
  const auto re = from_right_eigenvectors(energies, blocks, 1e-10, sys.cluster_gap(), sys.scale());
  CHECK(max_diff(re.phi(), 0.5 * sys.phi()) < 1e-12);
}

TEST_CASE("planted generator keeps two distinct levels") {
  Rng rng(99);
  for (PlantedKind kind : {PlantedKind::Real, PlantedKind::Paired, PlantedKind::Unpaired})
    for (Eigen::Index n = 2; n <= 6; ++n)
      for (int trial = 0; trial < 10; ++trial) {
        const auto p = plant_random(kind, n, rng, true);
        CHECK(p.levels.size() >= 2);
        Eigen::Index total = 0;
        for (const auto& lv : p.levels) total += lv.multiplicity;
        CHECK(total == n);
      }
}

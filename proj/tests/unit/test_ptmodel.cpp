#include "test_support.hpp"

using namespace pseudoherm;
using namespace pseudoherm::testing;

namespace {

double zero(double) { return 0.0; }
double square(double x) { return x * x; }
double cube(double x) { return x * x * x; }

}  // namespace

TEST_CASE("parity matrix") {
  CHECK(max_diff(parity_matrix(1), eye(1)) == 0.0);
  CHECK(max_diff(parity_matrix(2), mat(2, {0, 1, 1, 0})) == 0.0);
  const ComplexMatrix p = parity_matrix(3);
  CHECK(max_diff(p, mat(3, {0, 0, 1, 0, 1, 0, 1, 0, 0})) == 0.0);
  CHECK(max_diff(p * p, eye(3)) == 0.0);
  CHECK_THROWS_AS((void)parity_matrix(0), Error);
}

TEST_CASE("time reversal") {
  ComplexVector z(2);
  z << kI, 1;
  ComplexVector expected(2);
  expected << -kI, 1;
  CHECK(max_diff(pseudoherm::apply(time_reversal(2), z), expected) == 0.0);
}

TEST_CASE("lattice construction") {
  const auto spec = make_lattice(5, 2.0, 1.0, square, cube);
  CHECK(spec.spacing() == 1.0);
  const Eigen::VectorXd x = spec.grid();
  CHECK(x(0) == -2.0);
  CHECK(x(2) == 0.0);
  CHECK(x(4) == 2.0);
  CHECK(spec.v2(0) == -8.0);

  // K = -1/(2 h^2) tridiag(1, -2, 1) with h = 1.
  const ComplexMatrix h = build_pt_hamiltonian(make_lattice(3, 1.0, 1.0, zero, zero));
  CHECK(max_diff(h, mat(3, {1, -0.5, 0, -0.5, 1, -0.5, 0, -0.5, 1})) == 0.0);

  CHECK_THROWS_AS((void)make_lattice(4, 1.0, 1.0, zero, zero), Error);
  auto check_code = [](const LatticeSpec& s, ErrorCode code) {
    try {
      validate(s);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == code);
    }
  };
  check_code(make_lattice(5, 1.0, 1.0, cube, zero), ErrorCode::AsymmetricPotential);
  check_code(make_lattice(5, 1.0, 1.0, zero, square), ErrorCode::AsymmetricPotential);
  check_code(make_lattice(5, 1.0, -1.0, zero, zero), ErrorCode::InvalidInput);
  check_code(make_lattice(5, 0.0, 1.0, zero, zero), ErrorCode::InvalidInput);
}

TEST_CASE("free particle and Hermitian limit") {
  const ComplexMatrix k = build_pt_hamiltonian(make_lattice(21, 5.0, 1.0, zero, zero));
  CHECK(max_abs(k.imag()) == 0.0);
  CHECK(max_diff(k, k.transpose()) == 0.0);
  const auto sys = biorthonormal_eigensystem(k);
  CHECK(classify_spectrum(sys).tag == SpectrumTag::AllReal);
  for (const auto& lv : sys.levels()) CHECK(lv.energy.real() > 0.0);
  // Dirichlet spectrum of the discrete Laplacian: (1 - cos(j pi / (n + 1))) / h^2.
  const double h = 0.5;
  std::vector<Complex> expected;
  for (int j = 1; j <= 21; ++j) expected.emplace_back((1.0 - std::cos(j * M_PI / 22.0)) / (h * h), 0.0);
  CHECK(max_distance(eigenvalues_of(sys), sorted(expected)) < 1e-10 * norm(k));

  const ComplexMatrix harmonic = build_pt_hamiltonian(make_lattice(41, 10.0, 1.0, square, zero));
  CHECK(max_diff(harmonic, harmonic.adjoint()) == 0.0);
  const auto hsys = biorthonormal_eigensystem(harmonic);
  const auto hcls = classify_spectrum(hsys);
  CHECK(hcls.tag == SpectrumTag::AllReal);
  const ComplexMatrix ht = apply_transform(hermitizing_transform(hsys, hcls), harmonic);
  CHECK(max_diff(ht, ht.adjoint()) <= 1e-10 * norm(ht));
}

TEST_CASE("wall states closer than the cluster gap") {
  // On a narrow box the states pushed against the two walls come in pairs
  // split by ~5e-8, below the default gap 1e-8 ||H|| but far above tol.
  const ComplexMatrix h = build_pt_hamiltonian(make_lattice(21, 5.0, 1.0, square, zero));
  try {
    (void)biorthonormal_eigensystem(h);
    FAIL("expected NotDiagonalizable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotDiagonalizable);
    CHECK(std::string(e.what()).find("d = 2") != std::string::npos);
  }
  EigensystemOptions fine;
  fine.cluster_gap = 1e-12 * norm(h);
  const auto sys = biorthonormal_eigensystem(h, fine);
  CHECK(classify_spectrum(sys).tag == SpectrumTag::AllReal);
  CHECK(max_distance(eigenvalues_of(sys), reference_eigenvalues(h)) < 1e-10 * norm(h));
}

TEST_CASE("cubic PT lattice structure") {
  const ComplexMatrix h = build_pt_hamiltonian(make_lattice(41, 10.0, 1.0, square, cube, 0.1));
  const ComplexMatrix p = parity_matrix(41);
  const Check ph = is_parity_pseudo_hermitian(h, p, 1e-12);
  CHECK(ph.passed);
  CHECK(ph.residual == 0.0);
  CHECK(is_pt_symmetric(h, p, 1e-12).residual == 0.0);
  // T-anti-pseudo-Hermiticity: H^H = conj(H) because H is complex symmetric.
  CHECK(is_anti_pseudo_hermitian(h, time_reversal(41), 1e-12).residual == 0.0);

  const auto sys = biorthonormal_eigensystem(h);
  const auto cls = classify_spectrum(sys);
  CHECK(cls.tag != SpectrumTag::Unpaired);
  CHECK(max_distance(eigenvalues_of(sys), reference_eigenvalues(h)) < 1e-9 * norm(h));

  Rng rng(3);
  const ComplexMatrix g = random_complex(41, 41, rng);
  CHECK_FALSE(is_pt_symmetric(g, p, 1e-6).passed);
  CHECK_FALSE(is_parity_pseudo_hermitian(g, p, 1e-6).passed);
}

TEST_CASE("eta from tau PT") {
  const ComplexMatrix h = build_pt_hamiltonian(make_lattice(41, 10.0, 1.0, square, cube, 0.1));
  const ComplexMatrix p = parity_matrix(41);

  SUBCASE("conjugation gives the parity metric") {
    const auto eta = eta_from_tau_pt(h, time_reversal(41), p, 1e-12);
    CHECK(max_diff(eta.eta, p) == 0.0);
    CHECK_FALSE(eta.positive_definite);
  }
  SUBCASE("canonical tau in a PT-adapted eigenbasis") {
    const auto sys = biorthonormal_eigensystem(h);
    const auto cls = classify_spectrum(sys);
    const auto adapted = pt_adapted_system(sys, cls, p);
    const auto tau = canonical_tau(adapted);
    CHECK(is_anti_pseudo_hermitian(h, tau, 1e-9).passed);
    const auto eta = eta_from_tau_pt(h, tau, p, 1e-9);
    const ComplexMatrix raw = tau.m * p.conjugate();
    CHECK(max_diff(raw, raw.adjoint()) <= 1e-9 * norm(raw));
    CHECK(max_diff(eta.eta, raw) <= 1e-9 * norm(raw));
    CHECK(is_pseudo_hermitian(h, eta, 1e-9).passed);
    // In this gauge tau PT coincides with the canonical metric.
    CHECK(max_diff(eta.eta, build_metric(adapted, cls).eta) <= 1e-9 * norm(eta.eta));
  }
  SUBCASE("Hermitian limit") {
    const ComplexMatrix herm = build_pt_hamiltonian(make_lattice(41, 10.0, 1.0, square, zero));
    const auto eta = eta_from_tau_pt(herm, time_reversal(41), p, 1e-12);
    CHECK(max_diff(herm * p, p * herm) == 0.0);
    CHECK(is_pseudo_hermitian(herm, eta, 1e-12).passed);
  }
  SUBCASE("errors") {
    Rng rng(8);
    auto code_of = [&](const ComplexMatrix& hh, const AntilinearOperator& tau) {
      try {
        (void)eta_from_tau_pt(hh, tau, p, 1e-9);
      } catch (const Error& e) {
        return e.code();
      }
      return ErrorCode::InvalidInput;
    };
    CHECK(code_of(random_complex(41, 41, rng), time_reversal(41)) == ErrorCode::NotPTSymmetric);
    CHECK(code_of(h, AntilinearOperator{random_complex(41, 41, rng)}) == ErrorCode::ResultNotHermitian);
    // Hermitian tau PT that does not intertwine H.
    ComplexVector d = ComplexVector::LinSpaced(41, 1.0, 2.0);
    const ComplexMatrix eta_wrong = d.asDiagonal();
    CHECK(code_of(h, AntilinearOperator{eta_wrong * p.conjugate().inverse()}) == ErrorCode::NotPseudoHermitian);
  }
}

#pragma once

#include <map>
#include <optional>
#include <string>

#include "pseudoherm/antilinear.hpp"
#include "pseudoherm/eigensystem.hpp"
#include "pseudoherm/metric.hpp"

namespace pseudoherm {

/// Time-independent pseudo-canonical transformation zeta -> A zeta.
struct PseudoCanonicalTransform {
  ComplexMatrix a;
  bool time_dependent = false;
};

/// A = O^H with O = Phi, so that A H A^{-1} = Phi^H H Psi is Hermitian.
/// Throws SpectrumNotReal unless the spectrum class is AllReal.
PseudoCanonicalTransform hermitizing_transform(const BiorthonormalSystem& sys, const SpectrumClass& cls);

/// A H A^{-1}. Throws SingularA.
ComplexMatrix apply_transform(const PseudoCanonicalTransform& a, const ComplexMatrix& h);

/// eta = A^H A with factor O = A^H.
MetricOperator metric_from_transform(const PseudoCanonicalTransform& a);

struct ReportOptions {
  EigensystemOptions eigensystem;
  /// Tolerance for every identity check in the chain.
  double tol = 1e-9;
  std::optional<double> realness_tol;
  /// Times at which evolution invariance of the metric is sampled.
  std::vector<double> evolution_times{0.1, 0.7, 2.0};
};

/// Outcome of one stage: a residual when it ran, or the reason it was refused.
struct StageResult {
  bool ok = false;
  double residual = 0.0;
  std::string refusal;
};

/// Evidence for the real-spectrum equivalences on a single matrix.
///
/// Stage keys: "eigensystem", "reconstruction", "metric", "tau", "symmetry",
/// "exactness", "evolution", "hermitization".
struct EquivalenceReport {
  ComplexMatrix input;
  std::vector<Complex> energies;
  std::vector<Eigen::Index> multiplicities;
  SpectrumTag spectrum_class = SpectrumTag::AllReal;
  std::map<std::string, StageResult> stages;

  bool pseudo_hermitian = false;
  bool antilinear_symmetry = false;
  std::optional<bool> exact_symmetry;
  /// The three real-spectrum characterizations: positive-definite eta under
  /// which H is Hermitian, hermitizing A, exact antilinear symmetry.
  bool positive_metric = false;
  bool hermitizable = false;

  std::optional<MetricOperator> eta;
  std::optional<AntilinearOperator> tau;
  std::optional<AntilinearOperator> symmetry;
  std::optional<PseudoCanonicalTransform> transform;
  std::optional<ComplexMatrix> hermitian_image;

  /// For AllReal inputs: all three characterizations hold. For other inputs:
  /// the refusals agree with the spectrum class.
  bool consistent() const;
};

/// Runs eigensystem, classification, metric, tau, symmetry, exactness and
/// hermitization on H. Input-level failures (NonFinite, NotDiagonalizable, ...)
/// are rethrown with the stage label; UnpairedSpectrum and SpectrumNotReal are
/// recorded as refusals in the report.
EquivalenceReport real_spectrum_equivalence_report(const ComplexMatrix& h, const ReportOptions& opts = {});

}  // namespace pseudoherm

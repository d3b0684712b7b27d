#include "qmonogamy/state.hpp"

#include <algorithm>
#include <cmath>

#include "detail/random.hpp"

namespace qmono {

namespace {

std::string describe(StateValidationError::Kind kind, double deviation) {
  return "invalid state: " + to_string(kind) + " (deviation " + std::to_string(deviation) + ")";
}

}  // namespace

StateValidationError::StateValidationError(Kind kind, double deviation)
    : Error(describe(kind, deviation)), kind_(kind), deviation_(deviation) {}

std::string to_string(StateValidationError::Kind kind) {
  switch (kind) {
    case StateValidationError::Kind::NotHermitian: return "NotHermitian";
    case StateValidationError::Kind::NotUnitTrace: return "NotUnitTrace";
    case StateValidationError::Kind::NotPSD: return "NotPSD";
    case StateValidationError::Kind::NotNormalized: return "NotNormalized";
  }
  return "Unknown";
}

DensityMatrix validate_density(ComplexMatrix m, DimSignature sig) {
  if (m.rows() != m.cols()) throw DimensionError("validate_density: matrix is not square");
  sig.require_total(static_cast<Index>(m.rows()), "validate_density");
  if (!all_finite(m)) throw Error("validate_density: non-finite entries");

  const double herm = hermiticity_deviation(m);
  if (herm > kStateTolerance)
    throw StateValidationError(StateValidationError::Kind::NotHermitian, herm);
  const double tr_dev = std::abs(m.trace() - Complex(1.0));
  if (tr_dev > kStateTolerance)
    throw StateValidationError(StateValidationError::Kind::NotUnitTrace, tr_dev);
  const RealVector ev = hermitian_eigenvalues(m);
  const double min_ev = ev(ev.size() - 1);
  if (min_ev < -kStateTolerance)
    throw StateValidationError(StateValidationError::Kind::NotPSD, -min_ev);

  m = 0.5 * (m + m.adjoint()).eval();
  return DensityMatrix(std::move(m), std::move(sig));
}

DensityMatrix validate_density(ComplexMatrix m) {
  const auto d = static_cast<Index>(m.rows());
  return validate_density(std::move(m), DimSignature{d});
}

DensityMatrix DensityMatrix::reduced(std::span<const Index> keep) const {
  std::vector<Index> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  return validate_density(partial_trace(matrix_, sig_, kept), sig_.select(kept));
}

DensityMatrix DensityMatrix::reduced(std::initializer_list<Index> keep) const {
  return reduced(std::span<const Index>(keep.begin(), keep.size()));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return validate_density(kron(a.matrix(), b.matrix()), a.signature().append(b.signature()));
}

PureState::PureState(ComplexVector amplitudes, DimSignature sig)
    : amplitudes_(std::move(amplitudes)), sig_(std::move(sig)) {
  sig_.require_total(static_cast<Index>(amplitudes_.size()), "PureState");
  const double dev = std::abs(amplitudes_.norm() - 1.0);
  if (!(dev <= kNormTolerance))
    throw StateValidationError(StateValidationError::Kind::NotNormalized, dev);
}

DensityMatrix PureState::density() const {
  return validate_density(amplitudes_ * amplitudes_.adjoint(), sig_);
}

DensityMatrix PureState::reduced(std::span<const Index> keep) const {
  std::vector<Index> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  return validate_density(reduced_density(amplitudes_, sig_, kept), sig_.select(kept));
}

DensityMatrix PureState::reduced(std::initializer_list<Index> keep) const {
  return reduced(std::span<const Index>(keep.begin(), keep.size()));
}

PureState tensor(const PureState& a, const PureState& b) {
  return PureState(kron(a.amplitudes(), b.amplitudes()), a.signature().append(b.signature()));
}

Purification purify(const DensityMatrix& rho) {
  const auto spec = hermitian_eig(rho.matrix());
  const Index d = rho.dim();
  ComplexVector psi = ComplexVector::Zero(d * d);
  for (Index i = 0; i < d; ++i) {
    const double p = std::max(spec.eigenvalues(i), 0.0);
    if (p == 0.0) continue;
    // |i>_R ⊗ |v_i>_S with R the most significant factor.
    psi.segment(i * d, d) += std::sqrt(p) * spec.eigenvectors.col(i);
  }
  psi /= psi.norm();
  DimSignature ref = rho.signature();
  return Purification{PureState(std::move(psi), ref.append(rho.signature())), ref};
}

PureState maximally_entangled(Index d) {
  if (d < 2) throw DimensionError("maximally_entangled: d must be at least 2");
  ComplexVector psi = ComplexVector::Zero(d * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (Index i = 0; i < d; ++i) psi(i * d + i) = amp;
  return PureState(std::move(psi), DimSignature{d, d});
}

PureState basis_state(Index d, Index index) {
  if (index >= d) throw DimensionError("basis_state: index out of range");
  ComplexVector v = ComplexVector::Zero(d);
  v(index) = 1.0;
  return PureState(std::move(v), DimSignature{d});
}

DensityMatrix random_density(Index d, Index rank, std::uint64_t seed) {
  if (rank < 1 || rank > d) throw DimensionError("random_density: need 1 <= rank <= d");
  auto rng = detail::make_rng(seed);
  const ComplexMatrix g = detail::gaussian_matrix(d, rank, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return validate_density(std::move(rho), DimSignature{d});
}

PureState random_pure_state(const DimSignature& sig, std::uint64_t seed) {
  auto rng = detail::make_rng(seed);
  ComplexVector v = detail::gaussian_matrix(sig.total(), 1, rng).col(0);
  v /= v.norm();
  return PureState(std::move(v), sig);
}

PureState w_state() {
  ComplexVector psi = ComplexVector::Zero(8);
  const double amp = 1.0 / std::sqrt(3.0);
  psi(4) = amp;  // |1,0,0>
  psi(2) = amp;  // |0,1,0>
  psi(1) = amp;  // |0,0,1>
  return PureState(std::move(psi), DimSignature{2, 2, 2});
}

}  // namespace qmono

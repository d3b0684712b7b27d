#pragma once

// Validated quantum states: density matrices, pure states and purifications.

#include <cstdint>
#include <span>
#include <string>

#include "qmonogamy/tensor.hpp"

namespace qmono {

inline constexpr double kStateTolerance = 1e-10;
inline constexpr double kNormTolerance = 1e-12;

class StateValidationError : public Error {
public:
  enum class Kind { NotHermitian, NotUnitTrace, NotPSD, NotNormalized };

  StateValidationError(Kind kind, double deviation);
  Kind kind() const noexcept { return kind_; }
  /// Measured deviation from the violated condition.
  double deviation() const noexcept { return deviation_; }

private:
  Kind kind_;
  double deviation_;
};

std::string to_string(StateValidationError::Kind kind);

/// Hermitian, positive semidefinite, unit-trace operator with a subsystem
/// signature. Only constructible through validate_density().
class DensityMatrix {
public:
  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const DimSignature& signature() const noexcept { return sig_; }
  Index dim() const noexcept { return sig_.total(); }

  /// Reduced state on `keep` (original relative order).
  DensityMatrix reduced(std::span<const Index> keep) const;
  DensityMatrix reduced(std::initializer_list<Index> keep) const;

private:
  DensityMatrix(ComplexMatrix m, DimSignature sig) : matrix_(std::move(m)), sig_(std::move(sig)) {}
  friend DensityMatrix validate_density(ComplexMatrix m, DimSignature sig);

  ComplexMatrix matrix_;
  DimSignature sig_;
};

/// Throws StateValidationError (NotHermitian / NotUnitTrace / NotPSD) with the
/// measured deviation. Entries must be finite.
DensityMatrix validate_density(ComplexMatrix m, DimSignature sig);
/// Single-subsystem convenience overload.
DensityMatrix validate_density(ComplexMatrix m);

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

class PureState {
public:
  /// Throws StateValidationError(NotNormalized) if |norm - 1| > 1e-12.
  PureState(ComplexVector amplitudes, DimSignature sig);

  const ComplexVector& amplitudes() const noexcept { return amplitudes_; }
  const DimSignature& signature() const noexcept { return sig_; }
  Index dim() const noexcept { return sig_.total(); }

  DensityMatrix density() const;
  DensityMatrix reduced(std::span<const Index> keep) const;
  DensityMatrix reduced(std::initializer_list<Index> keep) const;

private:
  ComplexVector amplitudes_;
  DimSignature sig_;
};

PureState tensor(const PureState& a, const PureState& b);

/// Pure state over R ⊗ S whose S-marginal is the purified density matrix.
struct Purification {
  PureState pure;
  DimSignature reference_dims;
};

/// Canonical purification sum_i sqrt(p_i) |i>_R |v_i>_S built from the
/// spectral decomposition. The reference has the signature of the input.
Purification purify(const DensityMatrix& rho);

/// (1/sqrt(d)) sum_i |ii>.
PureState maximally_entangled(Index d);

/// |index> in dimension d.
PureState basis_state(Index d, Index index);

/// G G^dagger / tr(G G^dagger) for a Gaussian d x rank matrix G drawn from `seed`.
DensityMatrix random_density(Index d, Index rank, std::uint64_t seed);

/// Random pure state (Haar) of dimension `sig.total()`.
PureState random_pure_state(const DimSignature& sig, std::uint64_t seed);

/// (|1,0,0> + |0,1,0> + |0,0,1>)/sqrt(3) over three qubits (R, S, E).
PureState w_state();

}  // namespace qmono

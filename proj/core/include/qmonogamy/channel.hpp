#pragma once

// Quantum channels in Kraus, Stinespring and Choi form, their composition,
// adjoints and the link product of port-labelled Choi operators.
//
// Choi convention: C(Λ) = (id ⊗ Λ)(Ψ+) with Ψ+ unit-normalized, input
// reference first. The unnormalized operator sum_ij |i><j| ⊗ Λ(|i><j|) is
// d_in · C(Λ). Transposes are taken in the computational basis.

#include <cstdint>
#include <string>
#include <vector>

#include "qmonogamy/state.hpp"

namespace qmono {

inline constexpr double kChannelTolerance = 1e-10;

class ChannelValidationError : public Error {
public:
  ChannelValidationError(const std::string& what, double deviation);
  double deviation() const noexcept { return deviation_; }

private:
  double deviation_;
};

/// Completely positive map x -> sum_k K_k x K_k^dagger. Need not preserve
/// trace; instrument elements and adjoints live here.
class KrausMap {
public:
  explicit KrausMap(std::vector<ComplexMatrix> ops);

  const std::vector<ComplexMatrix>& ops() const noexcept { return ops_; }
  Index d_in() const noexcept { return d_in_; }
  Index d_out() const noexcept { return d_out_; }

  ComplexMatrix operator()(const ComplexMatrix& x) const;

  /// ||sum_k K^dagger K - 1||_max
  double trace_preservation_defect() const;
  /// ||sum_k K K^dagger - 1||_max (square maps only)
  double unitality_defect() const;

  /// Heisenberg-picture adjoint, Kraus operators {K_k^dagger}.
  KrausMap adjoint() const;

private:
  std::vector<ComplexMatrix> ops_;
  Index d_in_ = 0;
  Index d_out_ = 0;
};

/// Trace-preserving KrausMap (CPTP within 1e-10).
class KrausChannel : public KrausMap {
public:
  /// Throws ChannelValidationError when sum_k K^dagger K deviates from 1.
  explicit KrausChannel(std::vector<ComplexMatrix> ops);
  explicit KrausChannel(KrausMap map);
};

/// Unitary U : S_in ⊗ F -> S_out ⊗ E with a pure ancilla on F, realizing
/// Λ(ρ) = tr_E[U (ρ ⊗ φ) U^dagger]. A trivial ancilla has d_ancilla = 1.
struct StinespringDilation {
  ComplexMatrix unitary;
  ComplexVector ancilla;
  Index d_in = 0;
  Index d_ancilla = 1;
  Index d_out = 0;
  Index d_env = 1;

  /// Throws on non-unitary U, inconsistent dims or unnormalized ancilla.
  void validate() const;
};

StinespringDilation make_dilation(ComplexMatrix unitary, ComplexVector ancilla, Index d_in,
                                  Index d_out);

/// Normalized Choi state over R_in ⊗ S_out.
struct ChoiState {
  DensityMatrix state;
  Index d_in = 0;
  Index d_out = 0;

  ComplexMatrix unnormalized() const { return static_cast<double>(d_in) * state.matrix(); }
};

KrausChannel identity_channel(Index d);
KrausChannel unitary_channel(const ComplexMatrix& u);
/// ρ -> tr(ρ) 1/d
KrausChannel depolarizing_channel(Index d);

/// Σ_k K ρ K^dagger. The output keeps ρ's signature when d_in == d_out.
DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho);
/// (id ⊗ Λ ⊗ id)(ρ) with Λ on subsystem `target`.
DensityMatrix apply_to_subsystem(const KrausChannel& ch, const DensityMatrix& rho, Index target);
/// Same for a raw operator and a CP map; used for instruments and adjoints.
ComplexMatrix apply_to_subsystem(const KrausMap& map, const ComplexMatrix& m,
                                 const DimSignature& sig, Index target);

/// later ∘ earlier, Kraus set {L_j K_i}.
KrausChannel compose(const KrausChannel& later, const KrausChannel& earlier);

KrausChannel dilation_to_kraus(const StinespringDilation& dil);
/// tr_E[U (ρ ⊗ φ) U^dagger] evaluated directly.
DensityMatrix apply_dilation(const StinespringDilation& dil, const DensityMatrix& rho);

ChoiState choi_of(const KrausChannel& ch);
/// Unnormalized Choi operator sum_ij |i><j| ⊗ Λ(|i><j|) of a CP map.
ComplexMatrix choi_matrix(const KrausMap& map);
/// Kraus form recovered from the Choi eigendecomposition, eigenvalues below
/// 1e-12 dropped.
KrausChannel choi_to_kraus(const ChoiState& choi);
KrausMap choi_matrix_to_kraus(const ComplexMatrix& choi, Index d_in, Index d_out);

/// Heisenberg adjoint: CP and unital when `ch` is trace preserving.
KrausMap adjoint_channel(const KrausChannel& ch);

/// max_abs((A ⊗ id)(Φ) - [(id ⊗ A^dagger)(Φ)]^T) with Φ = sum_ij |ii><jj|.
/// Zero for every CP map A; square maps only.
double adjoint_choi_deviation(const KrausMap& a);

/// Random dilation with a Haar unitary on S_in ⊗ F. The ancilla dimension is
/// the smallest with d_in·d_F = d_out·d_env; throws DimensionError if none.
StinespringDilation random_channel(Index d_in, Index d_out, Index d_env, std::uint64_t seed);
ComplexMatrix random_unitary(Index d, std::uint64_t seed);

struct Port {
  std::string label;
  Index dim = 0;

  friend bool operator==(const Port&, const Port&) = default;
};

/// Operator over labelled ports, leftmost port most significant.
struct PortOperator {
  ComplexMatrix op;
  std::vector<Port> ports;

  DimSignature signature() const;
};

/// Unnormalized Choi operator of `map` with ports (in_label, out_label).
PortOperator choi_port_operator(const KrausMap& map, std::string in_label, std::string out_label);

/// a ⋆ b = tr_shared[(a^{T_shared} ⊗ 1)(1 ⊗ b)]. Result ports: a-only ports in
/// a's order, then b-only ports in b's order. No shared ports gives a ⊗ b.
PortOperator link_product(const PortOperator& a, const PortOperator& b);

}  // namespace qmono

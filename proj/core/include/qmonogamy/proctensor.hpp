#pragma once

// Multitime processes: process tensors over ports (R0, S1, R1, S2, ...,
// R_{k-1}, S_k), contraction with interventions, and interventional
// coherent informations of system-environment circuits.

#include <optional>
#include <string>
#include <vector>

#include "qmonogamy/witness.hpp"

namespace qmono {

/// Pure initial state over R0 ⊗ S ⊗ E and unitaries U_1, U_2, ... on S ⊗ E.
struct SystemEnvCircuit {
  PureState initial;
  std::vector<ComplexMatrix> step_unitaries;
  Index d_r0 = 0;
  Index d_s = 0;
  Index d_e = 0;

  void validate() const;
};

SystemEnvCircuit make_circuit(PureState initial, std::vector<ComplexMatrix> step_unitaries);

/// Circuit whose step i acts on S and a private fresh environment F_i:
/// E = F_1 ⊗ ... ⊗ F_m starts in φ_1 ⊗ ... ⊗ φ_m. Each dilation must map
/// S ⊗ F_i -> S ⊗ E_i with E_i ≅ F_i. `initial` is over R0 ⊗ S.
SystemEnvCircuit markov_circuit(const PureState& initial,
                                const std::vector<StinespringDilation>& steps);

/// The chain ρ_S, Λ_1, Λ_2, ... induced by a Markov circuit's dilations.
MarkovChainProcess induced_chain(const PureState& initial,
                                 const std::vector<StinespringDilation>& steps);

struct ProcessTensor {
  DensityMatrix choi;
  std::vector<Port> ports;

  /// Number of system output ports k.
  Index slots() const noexcept { return ports.size() / 2; }
  Index port_index(const std::string& label) const;
};

/// CP maps summing to a channel.
struct Instrument {
  std::vector<KrausMap> elements;

  /// Throws ChannelValidationError if the sum is not trace preserving.
  void validate() const;
};

/// Measure in the computational basis and re-prepare the outcome.
Instrument computational_basis_instrument(Index d);

inline constexpr Index kMaxAmplitudes = Index{1} << 14;

/// Feeds half of a normalized Ψ+ into each of the k-1 intervention slots
/// and traces the final environment. Needs k <= step_unitaries.size() + 1.
ProcessTensor build_process_tensor(const SystemEnvCircuit& c, Index k);

/// Probability tr[Υ A^T] of the CP maps. `maps` holds either k-1 entries
/// (final output traced) or k entries (the last one applied to S_k and its
/// output traced). Maps must send S to S.
double contract(const ProcessTensor& pt, const std::vector<KrausMap>& maps);
/// Unnormalized output on S_k after k-1 interventions; its trace is the
/// probability of the sequence.
ComplexMatrix contract_open(const ProcessTensor& pt, const std::vector<KrausMap>& maps);

/// Same quantity by density-matrix simulation of the circuit; the oracle for
/// contract(). Returns the unnormalized final system state.
ComplexMatrix simulate_circuit(const SystemEnvCircuit& c, const std::vector<KrausMap>& maps);

/// max_abs(Υ - ρ(R0,S1) ⊗ L_1(R1,S2) ⊗ ... ) with factors the marginals of Υ.
double markov_factorization_gap(const ProcessTensor& pt);

/// I(R_y : S_x) on the marginal of Υ (0-based R index, 1-based S index).
double port_mutual_information(const ProcessTensor& pt, Index y, Index x);
/// max over y >= x of I(R_y : S_x); zero up to rounding for any process.
double causality_violation(const ProcessTensor& pt);

/// I(R_j : S_k) with slots other than j before k contracted with
/// `interventions[m-1]` (identity when absent).
double interventional_mutual_information(const ProcessTensor& pt, Index j, Index k,
                                         const std::vector<KrausChannel>& interventions = {});

/// The seven Choi-state DPI gaps of a four-slot tensor.
WitnessReport choi_dpi_witnesses(const ProcessTensor& pt,
                                 const std::vector<KrausChannel>& interventions = {});

enum class MultitimeKind { Q1, Q2, Q3 };
std::string to_string(MultitimeKind kind);

/// At slot j the system output S_j is retained, ρ_j is purified into
/// (R_j, S') and S' continues through the circuit to slot k.
///   Q1: H(S_j R_j) - H(S_j R_j S_k)
///   Q2: H(S_k) - H(S_j R_j S_k)
///   Q3: H(S_j S_k) - H(S_j R_j S_k)
double multitime_coherent_info(const SystemEnvCircuit& c, MultitimeKind kind, Index j, Index k);

/// I(1;4) + I(2;3) - I(1;3) - I(2;4) for the chosen kind.
double mqmmi_witness(const SystemEnvCircuit& c, MultitimeKind kind);

}  // namespace qmono

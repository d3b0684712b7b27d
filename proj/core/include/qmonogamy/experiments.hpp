#pragma once

// The λ-parameterized non-Markov example, its λ sweeps, and randomized
// verification of the proven inequalities on sampled Markov processes.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qmonogamy/classical.hpp"

namespace qmono {

/// 4x4 unitary on S ⊗ E, λ ∈ [0, 1].
ComplexMatrix u_lambda(double lambda);

/// (|1,0,0> + |0,1,0> + |0,0,1>)/sqrt(3) over R ⊗ S ⊗ E.
PureState example_initial_state();

/// γ_1..γ_4 over R ⊗ S ⊗ E, γ_{i+1} = (1 ⊗ U_λ) γ_i (1 ⊗ U_λ)^dagger.
std::vector<PureState> gamma_states(double lambda);
std::vector<DensityMatrix> gamma_sequence(double lambda);

/// The same example as a circuit with U_λ at every step.
SystemEnvCircuit lambda_circuit(double lambda, Index steps = 3);

struct SweepRow {
  double lambda = 0.0;
  std::vector<std::pair<std::string, double>> values;

  double value(const std::string& name) const;
};

/// DP1..DP4 and M4 from the entropies of γ_2, γ_3, γ_4.
SweepRow nonmarkov_witness_row(double lambda);
/// DP5 on the Markov reference circuit, then DP5, DP6, DP7 on the γ states.
SweepRow extra_dpi_row(double lambda);
/// M4_q1, M4_q2, M4_q3 on the λ circuit.
SweepRow mqmmi_row(double lambda);

/// Markov reference for DP5: ψ = Ψ+ on R ⊗ S, φ_1 = φ_2 = |0>, U_1 = U_2 = U_λ.
MarkovChainProcess markov_reference_chain(double lambda);

struct LambdaSweepConfig {
  double lambda_min = 0.0;
  double lambda_max = 1.0;
  double step = 0.01;
  std::uint64_t seed = 0;

  /// Throws Error unless 0 <= min <= max <= 1 and step > 0.
  void validate() const;
};

/// min, min + step, ... up to max; the last point snaps to max when within
/// half a step of it.
std::vector<double> lambda_grid(const LambdaSweepConfig& cfg);

/// Rows in grid order, evaluated on the worker pool.
std::vector<SweepRow> sweep(const LambdaSweepConfig& cfg, const std::function<SweepRow(double)>& row);

/// ρ_1 and Stinespring steps of a randomly drawn Markov chain.
struct DilatedChain {
  DensityMatrix initial;
  std::vector<StinespringDilation> steps;

  MarkovChainProcess chain() const;
  /// Pure state over (R, E_1, ..., E_{n-1}, S_n): ρ_1 purified by R, each
  /// step's ancilla appended and its unitary applied.
  PureState purified_circuit() const;
};

/// `states` states of a d_s-dimensional system; each step has its own
/// environment of dimension d_env.
DilatedChain random_dilated_chain(Index states, Index d_s, Index d_env, std::uint64_t seed);

/// I(A:B|C) term of a certificate, subsystem indices of purified_circuit().
struct CmiTerm {
  Subsystems a, b, c;
};

/// Sum of conditional mutual informations equal to a witness on any Markov
/// chain. Known names: DP5 (as H(E1 E2) - H(E2), see below), M4, M6a, M6b,
/// M8a..M8g.
const std::vector<CmiTerm>& ssa_certificate(const std::string& witness);
double certificate_value(const PureState& circuit, const std::vector<CmiTerm>& terms);
/// H(E_1 | E_2) of the purified circuit.
double dp5_certificate(const PureState& circuit);

struct VerifyConfig {
  Index steps = 4;
  Index samples = 1000;
  std::uint64_t seed = 1;
  Index d_s = 2;
  /// Environment dimensions are drawn from 2..d_env_max per sample.
  Index d_env_max = 4;
  /// Number of samples on which witnesses are compared with certificates.
  Index certificate_samples = 100;
};

struct WitnessMinimum {
  double value = 0.0;
  std::uint64_t seed = 0;  ///< sample seed attaining the minimum
};

struct VerifySummary {
  std::map<std::string, WitnessMinimum> witness_minima;
  WitnessMinimum ssa_minimum;
  double certificate_mismatch = 0.0;
  double adjoint_identity_deviation = 0.0;
  double adjoint_unitality_deviation = 0.0;
  WitnessMinimum cqmi_minimum;
  WitnessMinimum mi_dpi_minimum;
  WitnessMinimum classical_cmmi_minimum;

  /// Names of failed checks (empty when everything passes).
  std::vector<std::string> failures() const;
};

/// Seed of sample i in a run with base seed `seed`.
std::uint64_t sample_seed(std::uint64_t seed, Index i);

/// Witnesses of a sampled chain: DP1..DP4 and M4 for 4 states, M6a/M6b for
/// 6, M8a..M8g for 8.
WitnessReport chain_witnesses(const MarkovChainProcess& p);

/// Samples random Markov chains of cfg.steps states and runs every proven
/// inequality on them, plus the auxiliary channel, CQMI and classical checks
/// drawn from the same seed.
VerifySummary random_markov_verify(const VerifyConfig& cfg);

}  // namespace qmono

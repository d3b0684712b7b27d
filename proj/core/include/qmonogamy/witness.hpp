#pragma once

// Inequality gaps of quantum Markov chains. Every witness is reported as
// "left side minus right side", so a Markov process gives values >= -ε.

#include <string>
#include <utility>
#include <vector>

#include "qmonogamy/info.hpp"

namespace qmono {

/// ρ_1 followed by channels Λ_1..Λ_{n-1}; `length()` counts states.
struct MarkovChainProcess {
  DensityMatrix initial;
  std::vector<KrausChannel> channels;

  Index length() const noexcept { return channels.size() + 1; }
  /// Throws DimensionError on incompatible adjacent dimensions.
  void validate() const;
  /// I_c(r, s) for all 1 <= r < s <= length().
  std::vector<std::vector<double>> coherent_table() const;
};

struct WitnessReport {
  std::vector<std::pair<std::string, double>> entries;
  double tolerance = kInequalityTolerance;

  void add(std::string name, double value) { entries.emplace_back(std::move(name), value); }
  /// Throws Error if `name` is absent.
  double value(const std::string& name) const;
  double min() const;
  /// Names whose value is below -tolerance, in entry order.
  std::vector<std::string> violated() const;
};

/// (r, s) index pairs of chain coherent informations.
using CoherentPairs = std::vector<std::pair<Index, Index>>;

/// Σ_lhs I_c(r,s) - Σ_rhs I_c(r,s) read from a coherent table.
double pair_sum_gap(const std::vector<std::vector<double>>& table, const CoherentPairs& lhs,
                    const CoherentPairs& rhs);

/// DP1..DP4 for a four-state chain.
WitnessReport qdpi_witnesses(const MarkovChainProcess& p);
/// I_c(1,4) + I_c(2,3) - I_c(1,3) - I_c(2,4)
double m4_witness(const MarkovChainProcess& p);
/// DP5..DP9 for four states; a three-state chain gives DP5 only.
WitnessReport extra_dpi_witnesses(const MarkovChainProcess& p);
/// M6a, M6b for a six-state chain.
WitnessReport m6_witnesses(const MarkovChainProcess& p);
/// M8a..M8g for an eight-state chain.
WitnessReport m8_witnesses(const MarkovChainProcess& p);

struct NamedPairs {
  std::string name;
  CoherentPairs lhs;
  CoherentPairs rhs;
};
const std::vector<NamedPairs>& m6_definitions();
const std::vector<NamedPairs>& m8_definitions();

/// Chain of 2n states read as X_n..X_1, Y_1..Y_n with X_i = state n+1-i and
/// Y_j = state n+j. Returns Σ I_c(X_i:Y_i) - Σ I_c(X_i:Y_f(i)). `f` lists
/// f(1)..f(n), 1-based. Throws on odd length, n > 5, or a non-permutation.
double monogamy_conjecture_gap(const MarkovChainProcess& p, const std::vector<Index>& f);
/// Pairs (r, s) of the right-hand sum for a permutation, same convention.
CoherentPairs conjecture_pairs(Index n, const std::vector<Index>& f);

/// I(A:B|C) - I(A:D|C) with ρ over A ⊗ B ⊗ C and D = Λ(B).
double cqmi_monotonicity_gap(const DensityMatrix& rho, const KrausChannel& ch);
/// I(A:B) - I(A:C) with ρ over A ⊗ B and C = Λ(B).
double mi_dpi_gap(const DensityMatrix& rho, const KrausChannel& ch);

}  // namespace qmono

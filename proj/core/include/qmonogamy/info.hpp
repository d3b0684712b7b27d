#pragma once

// Entropic functionals in bits. Eigenvalues below 1e-12 count as zero.

#include <vector>

#include "qmonogamy/channel.hpp"

namespace qmono {

inline constexpr double kEntropyCutoff = 1e-12;
/// Slack for "gap >= 0" assertions on entropic quantities.
inline constexpr double kInequalityTolerance = 1e-9;

using Subsystems = std::vector<Index>;

/// -Σ λ log2 λ of a Hermitian matrix (no validation beyond hermiticity).
double entropy_of_matrix(const ComplexMatrix& m);
double von_neumann(const DensityMatrix& rho);

/// H of the marginal on `subset`; the empty set has entropy 0.
double entropy(const DensityMatrix& rho, const Subsystems& subset);
/// Marginal entropy of a pure state, diagonalizing the smaller side of the cut.
double entropy(const PureState& psi, const Subsystems& subset);
double entropy(const ComplexVector& psi, const DimSignature& sig, const Subsystems& subset);

double mutual_information(const DensityMatrix& rho, const Subsystems& a, const Subsystems& b);
/// H(AC) + H(BC) - H(ABC) - H(C)
double conditional_mutual_information(const DensityMatrix& rho, const Subsystems& a,
                                      const Subsystems& b, const Subsystems& c);
/// Same functionals of a pure global state, computed without forming ρ.
double mutual_information(const PureState& psi, const Subsystems& a, const Subsystems& b);
double conditional_mutual_information(const PureState& psi, const Subsystems& a,
                                      const Subsystems& b, const Subsystems& c);

/// H(Λ(ρ)) - H((id ⊗ Λ)(ψ)) for the canonical purification ψ of ρ.
double coherent_information(const DensityMatrix& rho, const KrausChannel& ch);
/// Same, with the purification supplied: the last subsystem of `psi` must be
/// the channel input, everything before it the reference.
double coherent_information(const PureState& psi, const KrausChannel& ch);

/// I_c(ρ_r ; Λ_{s-1} ∘ ... ∘ Λ_r) with ρ_r the chain prefix applied to ρ_1.
/// Indices are 1-based states, 1 <= r < s <= chain.size() + 1.
double chain_coherent_information(const DensityMatrix& rho1, const std::vector<KrausChannel>& chain,
                                  Index r, Index s);

/// All I_c(r, s) at once; entry [r][s] (1-based, r < s) is valid, others 0.
/// Each ρ_r is purified once and pushed through the remaining channels.
std::vector<std::vector<double>> chain_coherent_table(const DensityMatrix& rho1,
                                                      const std::vector<KrausChannel>& chain);

}  // namespace qmono

#pragma once

// Classical joint distributions, Shannon measures and Markov chains.
// Transition matrices are column stochastic: T(x_new, x_old).

#include <cstdint>
#include <vector>

#include "qmonogamy/proctensor.hpp"

namespace qmono {

inline constexpr double kPmfTolerance = 1e-12;

using RealMatrix = Eigen::MatrixXd;

/// Probabilities over variables with alphabet sizes `dims`, big-endian.
class JointPMF {
public:
  /// Throws Error unless entries are >= -1e-15 and sum to 1 within 1e-12.
  JointPMF(std::vector<Index> dims, std::vector<double> probabilities);

  const std::vector<Index>& dims() const noexcept { return dims_; }
  const std::vector<double>& probabilities() const noexcept { return p_; }
  Index variables() const noexcept { return dims_.size(); }

  /// Marginal on `subset` (kept in ascending variable order).
  std::vector<double> marginal(const Subsystems& subset) const;

private:
  std::vector<Index> dims_;
  std::vector<double> p_;
};

struct ClassicalChain {
  std::vector<double> initial;
  std::vector<RealMatrix> transitions;

  void validate() const;
};

JointPMF joint_from_chain(const ClassicalChain& c);

double shannon_entropy(const std::vector<double>& p);
double shannon_entropy(const JointPMF& p, const Subsystems& subset);
double classical_mi(const JointPMF& p, const Subsystems& a, const Subsystems& b);
double classical_cmi(const JointPMF& p, const Subsystems& a, const Subsystems& b,
                     const Subsystems& c);

/// H(X_i | X_{i-1}) - H(X_i | X_{i-1}, ..., X_1) <= tol for every i >= 3.
bool is_markov(const JointPMF& p, double tol);
/// Largest of those conditional-entropy gaps.
double markov_violation(const JointPMF& p);

/// Variables read as X_n..X_1, Y_1..Y_n (X_i = variable n+1-i, Y_j = n+j,
/// 1-based). Returns Σ I(X_i:Y_i) - Σ I(X_i:Y_f(i)).
double cmmi_gap(const JointPMF& p, const std::vector<Index>& f);

/// Chain of `variables` variables over a common alphabet; initial pmf and
/// every transition column drawn uniformly from the simplex.
ClassicalChain random_chain(Index variables, Index alphabet, std::uint64_t seed);

/// Joint outcome distribution of measuring every slot of a process tensor in
/// the computational basis (measure-and-reprepare instruments).
JointPMF dephased_pmf(const ProcessTensor& pt);

/// All permutations of 1..n in lexicographic order.
std::vector<std::vector<Index>> permutations(Index n);

}  // namespace qmono

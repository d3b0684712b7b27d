#pragma once

// Dense complex linear algebra over multipartite Hilbert spaces.
//
// Subsystem ordering is big-endian throughout: the leftmost tensor factor is
// the most significant digit of a computational-basis index, so |1,0,0> on
// three qubits is basis index 4.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qmono {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = std::size_t;

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Shapes or subsystem labels do not line up.
class DimensionError : public Error {
public:
  using Error::Error;
};

class NonHermitianError : public Error {
public:
  NonHermitianError(double deviation);
  double deviation() const noexcept { return deviation_; }

private:
  double deviation_;
};

/// Ordered list of subsystem dimensions annotating a matrix or vector.
class DimSignature {
public:
  DimSignature() = default;
  explicit DimSignature(std::vector<Index> dims);
  DimSignature(std::initializer_list<Index> dims);

  const std::vector<Index>& dims() const noexcept { return dims_; }
  Index count() const noexcept { return dims_.size(); }
  Index dim(Index subsystem) const;
  /// Product of all subsystem dimensions.
  Index total() const noexcept { return total_; }
  /// Product of the dimensions of the listed subsystems.
  Index total_of(std::span<const Index> subsystems) const;

  /// Signature restricted to `subsystems`, in the order given.
  DimSignature select(std::span<const Index> subsystems) const;
  /// Concatenation, `*this` first.
  DimSignature append(const DimSignature& other) const;

  /// Throws DimensionError unless `n == total()`.
  void require_total(Index n, const char* what) const;

  friend bool operator==(const DimSignature&, const DimSignature&) = default;

private:
  std::vector<Index> dims_;
  Index total_ = 1;
};

std::string to_string(const DimSignature& sig);

struct HermitianSpectrum {
  RealVector eigenvalues;    ///< descending
  ComplexMatrix eigenvectors;  ///< columns, unitary
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);
ComplexMatrix kron_all(std::span<const ComplexMatrix> factors);

ComplexMatrix dagger(const ComplexMatrix& m);

/// max |m_ij|
double max_abs(const ComplexMatrix& m);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double hermiticity_deviation(const ComplexMatrix& m);
bool all_finite(const ComplexMatrix& m);

/// True iff ||m^dagger m - I||_max <= tol.
bool is_unitary(const ComplexMatrix& m, double tol);

/// Trace out everything except `keep`. Kept subsystems stay in their original
/// relative order regardless of the order in `keep`.
ComplexMatrix partial_trace(const ComplexMatrix& m, const DimSignature& sig,
                            std::span<const Index> keep);
ComplexMatrix partial_trace(const ComplexMatrix& m, const DimSignature& sig,
                            std::initializer_list<Index> keep);

/// Reduced density operator of the pure state `psi` on `keep` (original order).
ComplexMatrix reduced_density(const ComplexVector& psi, const DimSignature& sig,
                              std::span<const Index> keep);

/// Reshape `psi` into a (keep x rest) matrix; both index groups keep their
/// original relative order.
ComplexMatrix bipartite_reshape(const ComplexVector& psi, const DimSignature& sig,
                                std::span<const Index> keep);

/// Reorder subsystems: new subsystem i is old subsystem `order[i]`.
ComplexMatrix permute_subsystems(const ComplexMatrix& m, const DimSignature& sig,
                                 std::span<const Index> order);
ComplexVector permute_subsystems(const ComplexVector& v, const DimSignature& sig,
                                 std::span<const Index> order);

/// Apply the square operator `op` to the `targets` factors of `psi` (in the
/// order listed), identity elsewhere.
ComplexVector apply_local(const ComplexVector& psi, const DimSignature& sig,
                          std::span<const Index> targets, const ComplexMatrix& op);

/// Full-space matrix of `op` acting on `targets`, identity elsewhere.
ComplexMatrix embed(const ComplexMatrix& op, const DimSignature& sig,
                    std::span<const Index> targets);

/// tr_targets[ m (x_targets ⊗ 1_rest) ], the remaining subsystems in original
/// order. `x` is laid out over `targets` in the order listed.
ComplexMatrix contract_subsystems(const ComplexMatrix& m, const DimSignature& sig,
                                  std::span<const Index> targets, const ComplexMatrix& x);

/// Spectral decomposition of a Hermitian matrix. The input is symmetrized to
/// (m + m^dagger)/2 first; deviations above 1e-8 throw NonHermitianError.
HermitianSpectrum hermitian_eig(const ComplexMatrix& m);
/// Eigenvalues only, descending.
RealVector hermitian_eigenvalues(const ComplexMatrix& m);

inline constexpr double kHermitianTolerance = 1e-8;

}  // namespace qmono

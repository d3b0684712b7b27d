#include "qmonogamy/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace qmono {

NonHermitianError::NonHermitianError(double deviation)
    : Error("matrix is not Hermitian (max |m - m^dagger| = " + std::to_string(deviation) + ")"),
      deviation_(deviation) {}

DimSignature::DimSignature(std::vector<Index> dims) : dims_(std::move(dims)) {
  for (Index d : dims_) {
    if (d < 2) throw DimensionError("subsystem dimensions must be at least 2");
    total_ *= d;
  }
}

DimSignature::DimSignature(std::initializer_list<Index> dims)
    : DimSignature(std::vector<Index>(dims)) {}

Index DimSignature::dim(Index subsystem) const {
  if (subsystem >= dims_.size())
    throw DimensionError("subsystem index " + std::to_string(subsystem) + " out of range for " +
                         to_string(*this));
  return dims_[subsystem];
}

Index DimSignature::total_of(std::span<const Index> subsystems) const {
  Index n = 1;
  for (Index s : subsystems) n *= dim(s);
  return n;
}

DimSignature DimSignature::select(std::span<const Index> subsystems) const {
  std::vector<Index> out;
  out.reserve(subsystems.size());
  for (Index s : subsystems) out.push_back(dim(s));
  return DimSignature(std::move(out));
}

DimSignature DimSignature::append(const DimSignature& other) const {
  std::vector<Index> out = dims_;
  out.insert(out.end(), other.dims_.begin(), other.dims_.end());
  return DimSignature(std::move(out));
}

void DimSignature::require_total(Index n, const char* what) const {
  if (n != total_) {
    std::ostringstream os;
    os << what << ": dimension " << n << " does not match signature " << to_string(*this);
    throw DimensionError(os.str());
  }
}

std::string to_string(const DimSignature& sig) {
  std::ostringstream os;
  os << '[';
  for (Index i = 0; i < sig.count(); ++i) os << (i ? "," : "") << sig.dims()[i];
  os << ']';
  return os.str();
}

namespace {

void check_subset(const DimSignature& sig, std::span<const Index> subset) {
  std::vector<bool> seen(sig.count(), false);
  for (Index s : subset) {
    if (s >= sig.count())
      throw DimensionError("subsystem index " + std::to_string(s) + " out of range for " +
                           to_string(sig));
    if (seen[s]) throw DimensionError("duplicate subsystem index " + std::to_string(s));
    seen[s] = true;
  }
}

std::vector<Index> complement(const DimSignature& sig, std::span<const Index> subset) {
  std::vector<bool> in(sig.count(), false);
  for (Index s : subset) in[s] = true;
  std::vector<Index> rest;
  for (Index i = 0; i < sig.count(); ++i)
    if (!in[i]) rest.push_back(i);
  return rest;
}

// Index of every full basis state within the subsystems of `group`, with
// `group` read as a big-endian register in the order given.
std::vector<Index> group_indices(const DimSignature& sig, std::span<const Index> group) {
  const Index n = sig.count();
  std::vector<Index> full_stride(n, 1);
  for (Index i = n; i-- > 1;) full_stride[i - 1] = full_stride[i] * sig.dims()[i];

  std::vector<Index> group_stride(group.size(), 1);
  for (Index p = group.size(); p-- > 1;) group_stride[p - 1] = group_stride[p] * sig.dim(group[p]);

  std::vector<Index> out(sig.total(), 0);
  for (Index full = 0; full < sig.total(); ++full) {
    Index g = 0;
    for (Index p = 0; p < group.size(); ++p) {
      const Index s = group[p];
      const Index digit = (full / full_stride[s]) % sig.dims()[s];
      g += digit * group_stride[p];
    }
    out[full] = g;
  }
  return out;
}

// table[a * rest_dim + b] = full index whose `group` digits read a and whose
// remaining digits (original order) read b.
std::vector<Index> split_table(const DimSignature& sig, std::span<const Index> group,
                               Index& group_dim, Index& rest_dim) {
  const auto rest = complement(sig, group);
  const auto gi = group_indices(sig, group);
  const auto ri = group_indices(sig, rest);
  group_dim = sig.total_of(group);
  rest_dim = sig.total() / group_dim;
  std::vector<Index> table(sig.total());
  for (Index full = 0; full < sig.total(); ++full) table[gi[full] * rest_dim + ri[full]] = full;
  return table;
}

std::vector<Index> sorted(std::span<const Index> v) {
  std::vector<Index> out(v.begin(), v.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

ComplexMatrix kron_all(std::span<const ComplexMatrix> factors) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

ComplexMatrix dagger(const ComplexMatrix& m) { return m.adjoint(); }

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("max_abs_diff: shape mismatch");
  return max_abs(a - b);
}

double hermiticity_deviation(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("hermiticity_deviation: matrix is not square");
  return max_abs(m - m.adjoint());
}

bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const ComplexMatrix gram = m.adjoint() * m;
  return max_abs(gram - ComplexMatrix::Identity(m.rows(), m.cols())) <= tol;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const DimSignature& sig,
                            std::span<const Index> keep) {
  if (m.rows() != m.cols()) throw DimensionError("partial_trace: matrix is not square");
  sig.require_total(static_cast<Index>(m.rows()), "partial_trace");
  check_subset(sig, keep);
  const auto kept = sorted(keep);

  Index kd = 0, td = 0;
  const auto table = split_table(sig, kept, kd, td);
  ComplexMatrix out = ComplexMatrix::Zero(kd, kd);
  for (Index a = 0; a < kd; ++a)
    for (Index a2 = 0; a2 < kd; ++a2) {
      Complex acc = 0.0;
      for (Index t = 0; t < td; ++t) acc += m(table[a * td + t], table[a2 * td + t]);
      out(a, a2) = acc;
    }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const DimSignature& sig,
                            std::initializer_list<Index> keep) {
  return partial_trace(m, sig, std::span<const Index>(keep.begin(), keep.size()));
}

ComplexMatrix bipartite_reshape(const ComplexVector& psi, const DimSignature& sig,
                                std::span<const Index> keep) {
  sig.require_total(static_cast<Index>(psi.size()), "bipartite_reshape");
  check_subset(sig, keep);
  const auto kept = sorted(keep);
  Index kd = 0, rd = 0;
  const auto table = split_table(sig, kept, kd, rd);
  ComplexMatrix out(kd, rd);
  for (Index a = 0; a < kd; ++a)
    for (Index b = 0; b < rd; ++b) out(a, b) = psi(table[a * rd + b]);
  return out;
}

ComplexMatrix reduced_density(const ComplexVector& psi, const DimSignature& sig,
                              std::span<const Index> keep) {
  const ComplexMatrix m = bipartite_reshape(psi, sig, keep);
  return m * m.adjoint();
}

ComplexMatrix permute_subsystems(const ComplexMatrix& m, const DimSignature& sig,
                                 std::span<const Index> order) {
  if (m.rows() != m.cols()) throw DimensionError("permute_subsystems: matrix is not square");
  sig.require_total(static_cast<Index>(m.rows()), "permute_subsystems");
  if (order.size() != sig.count()) throw DimensionError("permute_subsystems: order is not a permutation");
  check_subset(sig, order);
  const auto target = group_indices(sig, order);
  ComplexMatrix out(m.rows(), m.cols());
  for (Index i = 0; i < sig.total(); ++i)
    for (Index j = 0; j < sig.total(); ++j) out(target[i], target[j]) = m(i, j);
  return out;
}

ComplexVector permute_subsystems(const ComplexVector& v, const DimSignature& sig,
                                 std::span<const Index> order) {
  sig.require_total(static_cast<Index>(v.size()), "permute_subsystems");
  if (order.size() != sig.count()) throw DimensionError("permute_subsystems: order is not a permutation");
  check_subset(sig, order);
  const auto target = group_indices(sig, order);
  ComplexVector out(v.size());
  for (Index i = 0; i < sig.total(); ++i) out(target[i]) = v(i);
  return out;
}

ComplexVector apply_local(const ComplexVector& psi, const DimSignature& sig,
                          std::span<const Index> targets, const ComplexMatrix& op) {
  sig.require_total(static_cast<Index>(psi.size()), "apply_local");
  check_subset(sig, targets);
  Index ad = 0, rd = 0;
  const auto table = split_table(sig, targets, ad, rd);
  if (static_cast<Index>(op.rows()) != ad || static_cast<Index>(op.cols()) != ad)
    throw DimensionError("apply_local: operator does not match target dimension");
  ComplexMatrix block(ad, rd);
  for (Index a = 0; a < ad; ++a)
    for (Index b = 0; b < rd; ++b) block(a, b) = psi(table[a * rd + b]);
  const ComplexMatrix moved = op * block;
  ComplexVector out(psi.size());
  for (Index a = 0; a < ad; ++a)
    for (Index b = 0; b < rd; ++b) out(table[a * rd + b]) = moved(a, b);
  return out;
}

ComplexMatrix embed(const ComplexMatrix& op, const DimSignature& sig,
                    std::span<const Index> targets) {
  check_subset(sig, targets);
  Index ad = 0, rd = 0;
  const auto table = split_table(sig, targets, ad, rd);
  if (static_cast<Index>(op.rows()) != ad || static_cast<Index>(op.cols()) != ad)
    throw DimensionError("embed: operator does not match target dimension");
  ComplexMatrix out = ComplexMatrix::Zero(sig.total(), sig.total());
  for (Index a = 0; a < ad; ++a)
    for (Index a2 = 0; a2 < ad; ++a2) {
      const Complex v = op(a, a2);
      if (v == Complex(0.0)) continue;
      for (Index b = 0; b < rd; ++b) out(table[a * rd + b], table[a2 * rd + b]) = v;
    }
  return out;
}

ComplexMatrix contract_subsystems(const ComplexMatrix& m, const DimSignature& sig,
                                  std::span<const Index> targets, const ComplexMatrix& x) {
  if (m.rows() != m.cols()) throw DimensionError("contract_subsystems: matrix is not square");
  sig.require_total(static_cast<Index>(m.rows()), "contract_subsystems");
  check_subset(sig, targets);
  Index ad = 0, rd = 0;
  const auto table = split_table(sig, targets, ad, rd);
  if (static_cast<Index>(x.rows()) != ad || static_cast<Index>(x.cols()) != ad)
    throw DimensionError("contract_subsystems: operator does not match target dimension");
  ComplexMatrix out = ComplexMatrix::Zero(rd, rd);
  for (Index a = 0; a < ad; ++a)
    for (Index a2 = 0; a2 < ad; ++a2) {
      const Complex w = x(a2, a);
      if (w == Complex(0.0)) continue;
      for (Index b = 0; b < rd; ++b)
        for (Index b2 = 0; b2 < rd; ++b2) out(b, b2) += w * m(table[a * rd + b], table[a2 * rd + b2]);
    }
  return out;
}

HermitianSpectrum hermitian_eig(const ComplexMatrix& m) {
  const double dev = hermiticity_deviation(m);
  if (dev > kHermitianTolerance) throw NonHermitianError(dev);
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw Error("hermitian_eig: decomposition did not converge");
  const Eigen::Index n = sym.rows();
  HermitianSpectrum out{RealVector(n), ComplexMatrix(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    out.eigenvalues(i) = solver.eigenvalues()(n - 1 - i);
    out.eigenvectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return out;
}

RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
  const double dev = hermiticity_deviation(m);
  if (dev > kHermitianTolerance) throw NonHermitianError(dev);
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("hermitian_eig: decomposition did not converge");
  return solver.eigenvalues().reverse();
}

}  // namespace qmono

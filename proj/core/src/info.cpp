#include "qmonogamy/info.hpp"

#include <algorithm>
#include <cmath>

namespace qmono {

namespace {

void require_disjoint(std::initializer_list<const Subsystems*> sets, Index count) {
  std::vector<bool> seen(count, false);
  for (const auto* s : sets)
    for (Index i : *s) {
      if (i >= count) throw DimensionError("subsystem index out of range");
      if (seen[i]) throw DimensionError("subsystem sets overlap");
      seen[i] = true;
    }
}

Subsystems join(const Subsystems& a, const Subsystems& b) {
  Subsystems out = a;
  out.insert(out.end(), b.begin(), b.end());
  std::sort(out.begin(), out.end());
  return out;
}

Subsystems join(const Subsystems& a, const Subsystems& b, const Subsystems& c) {
  return join(join(a, b), c);
}

// H(S) - H(RS) of a joint reference-system operator.
double coherent_from_joint(const ComplexMatrix& joint, Index d_ref, Index d_sys) {
  const DimSignature sig{d_ref, d_sys};
  return entropy_of_matrix(partial_trace(joint, sig, {1})) - entropy_of_matrix(joint);
}

ComplexMatrix purified_joint(const DensityMatrix& rho) {
  const auto p = purify(rho);
  return p.pure.amplitudes() * p.pure.amplitudes().adjoint();
}

}  // namespace

double entropy_of_matrix(const ComplexMatrix& m) {
  const RealVector ev = hermitian_eigenvalues(m);
  double h = 0.0;
  for (Index i = 0; i < static_cast<Index>(ev.size()); ++i) {
    const double p = ev(i);
    if (p > kEntropyCutoff) h -= p * std::log2(p);
  }
  return h;
}

double von_neumann(const DensityMatrix& rho) { return entropy_of_matrix(rho.matrix()); }

double entropy(const DensityMatrix& rho, const Subsystems& subset) {
  if (subset.empty()) return 0.0;
  require_disjoint({&subset}, rho.signature().count());
  if (subset.size() == rho.signature().count()) return von_neumann(rho);
  return entropy_of_matrix(partial_trace(rho.matrix(), rho.signature(), subset));
}

double entropy(const ComplexVector& psi, const DimSignature& sig, const Subsystems& subset) {
  if (subset.empty() || subset.size() == sig.count()) {
    require_disjoint({&subset}, sig.count());
    return 0.0;
  }
  require_disjoint({&subset}, sig.count());
  const Index d_keep = sig.total_of(subset);
  if (d_keep * d_keep <= sig.total()) return entropy_of_matrix(reduced_density(psi, sig, subset));
  Subsystems rest;
  for (Index i = 0; i < sig.count(); ++i)
    if (std::find(subset.begin(), subset.end(), i) == subset.end()) rest.push_back(i);
  return entropy_of_matrix(reduced_density(psi, sig, rest));
}

double entropy(const PureState& psi, const Subsystems& subset) {
  return entropy(psi.amplitudes(), psi.signature(), subset);
}

double mutual_information(const DensityMatrix& rho, const Subsystems& a, const Subsystems& b) {
  require_disjoint({&a, &b}, rho.signature().count());
  return entropy(rho, a) + entropy(rho, b) - entropy(rho, join(a, b));
}

double conditional_mutual_information(const DensityMatrix& rho, const Subsystems& a,
                                      const Subsystems& b, const Subsystems& c) {
  require_disjoint({&a, &b, &c}, rho.signature().count());
  return entropy(rho, join(a, c)) + entropy(rho, join(b, c)) - entropy(rho, join(a, b, c)) -
         entropy(rho, c);
}

double mutual_information(const PureState& psi, const Subsystems& a, const Subsystems& b) {
  require_disjoint({&a, &b}, psi.signature().count());
  return entropy(psi, a) + entropy(psi, b) - entropy(psi, join(a, b));
}

double conditional_mutual_information(const PureState& psi, const Subsystems& a,
                                      const Subsystems& b, const Subsystems& c) {
  require_disjoint({&a, &b, &c}, psi.signature().count());
  return entropy(psi, join(a, c)) + entropy(psi, join(b, c)) - entropy(psi, join(a, b, c)) -
         entropy(psi, c);
}

double coherent_information(const DensityMatrix& rho, const KrausChannel& ch) {
  if (rho.dim() != ch.d_in())
    throw DimensionError("coherent_information: state dimension differs from channel input");
  const Index d = rho.dim();
  const DimSignature sig{d, d};
  const ComplexMatrix joint = apply_to_subsystem(ch, purified_joint(rho), sig, 1);
  return coherent_from_joint(joint, d, ch.d_out());
}

double coherent_information(const PureState& psi, const KrausChannel& ch) {
  const DimSignature& sig = psi.signature();
  if (sig.count() < 2) throw DimensionError("coherent_information: purification needs a reference");
  const Index last = sig.count() - 1;
  if (sig.dim(last) != ch.d_in())
    throw DimensionError("coherent_information: last subsystem differs from channel input");
  const Index d_ref = sig.total() / sig.dim(last);
  const DimSignature flat{d_ref, sig.dim(last)};
  const ComplexMatrix pure = psi.amplitudes() * psi.amplitudes().adjoint();
  const ComplexMatrix joint = apply_to_subsystem(ch, pure, flat, 1);
  return coherent_from_joint(joint, d_ref, ch.d_out());
}

std::vector<std::vector<double>> chain_coherent_table(const DensityMatrix& rho1,
                                                      const std::vector<KrausChannel>& chain) {
  const Index n = chain.size() + 1;
  for (Index i = 0; i < chain.size(); ++i) {
    const Index in = i == 0 ? rho1.dim() : chain[i - 1].d_out();
    if (chain[i].d_in() != in) throw DimensionError("chain: adjacent channel dimensions differ");
  }
  std::vector<std::vector<double>> table(n + 1, std::vector<double>(n + 1, 0.0));
  DensityMatrix rho_r = rho1;
  for (Index r = 1; r < n; ++r) {
    const Index d_ref = rho_r.dim();
    ComplexMatrix joint = purified_joint(rho_r);
    for (Index s = r + 1; s <= n; ++s) {
      const KrausChannel& ch = chain[s - 2];
      joint = apply_to_subsystem(ch, joint, DimSignature{d_ref, ch.d_in()}, 1);
      table[r][s] = coherent_from_joint(joint, d_ref, ch.d_out());
    }
    rho_r = apply(chain[r - 1], rho_r);
  }
  return table;
}

double chain_coherent_information(const DensityMatrix& rho1, const std::vector<KrausChannel>& chain,
                                  Index r, Index s) {
  const Index n = chain.size() + 1;
  if (!(1 <= r && r < s && s <= n))
    throw DimensionError("chain_coherent_information: need 1 <= r < s <= chain length + 1");
  DensityMatrix rho_r = rho1;
  for (Index i = 1; i < r; ++i) rho_r = apply(chain[i - 1], rho_r);
  const Index d_ref = rho_r.dim();
  ComplexMatrix joint = purified_joint(rho_r);
  Index d_sys = d_ref;
  for (Index i = r; i < s; ++i) {
    const KrausChannel& ch = chain[i - 1];
    if (ch.d_in() != d_sys) throw DimensionError("chain: adjacent channel dimensions differ");
    joint = apply_to_subsystem(ch, joint, DimSignature{d_ref, d_sys}, 1);
    d_sys = ch.d_out();
  }
  return coherent_from_joint(joint, d_ref, d_sys);
}

}  // namespace qmono

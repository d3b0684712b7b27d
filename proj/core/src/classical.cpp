#include "qmonogamy/classical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "detail/random.hpp"

namespace qmono {

namespace {

void require_disjoint(std::initializer_list<const Subsystems*> sets, Index count) {
  std::vector<bool> seen(count, false);
  for (const auto* s : sets)
    for (Index i : *s) {
      if (i >= count) throw DimensionError("variable index out of range");
      if (seen[i]) throw DimensionError("variable sets overlap");
      seen[i] = true;
    }
}

Subsystems join(Subsystems a, const Subsystems& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  return a;
}

std::vector<double> simplex_point(Index d, std::mt19937_64& rng) {
  std::exponential_distribution<double> exp1(1.0);
  std::vector<double> v(d);
  for (auto& x : v) x = exp1(rng);
  const double s = std::accumulate(v.begin(), v.end(), 0.0);
  for (auto& x : v) x /= s;
  return v;
}

}  // namespace

JointPMF::JointPMF(std::vector<Index> dims, std::vector<double> probabilities)
    : dims_(std::move(dims)), p_(std::move(probabilities)) {
  Index total = 1;
  for (Index d : dims_) {
    if (d < 1) throw DimensionError("JointPMF: alphabet sizes must be positive");
    total *= d;
  }
  if (total != p_.size()) throw DimensionError("JointPMF: probability count does not match dims");
  double sum = 0.0;
  for (double x : p_) {
    if (!std::isfinite(x) || x < -1e-15) throw Error("JointPMF: negative or non-finite probability");
    sum += x;
  }
  if (std::abs(sum - 1.0) > kPmfTolerance) throw Error("JointPMF: probabilities do not sum to 1");
}

std::vector<double> JointPMF::marginal(const Subsystems& subset) const {
  require_disjoint({&subset}, dims_.size());
  Subsystems keep = subset;
  std::sort(keep.begin(), keep.end());
  Index out_size = 1;
  for (Index i : keep) out_size *= dims_[i];
  std::vector<double> out(out_size, 0.0);
  const Index n = dims_.size();
  std::vector<Index> digits(n, 0);
  for (Index flat = 0; flat < p_.size(); ++flat) {
    Index rem = flat;
    for (Index i = n; i-- > 0;) {
      digits[i] = rem % dims_[i];
      rem /= dims_[i];
    }
    Index idx = 0;
    for (Index i : keep) idx = idx * dims_[i] + digits[i];
    out[idx] += p_[flat];
  }
  return out;
}

void ClassicalChain::validate() const {
  double sum = 0.0;
  for (double x : initial) {
    if (x < -1e-15) throw Error("ClassicalChain: negative initial probability");
    sum += x;
  }
  if (std::abs(sum - 1.0) > kPmfTolerance) throw Error("ClassicalChain: initial pmf does not sum to 1");
  Index d = initial.size();
  for (const auto& t : transitions) {
    if (static_cast<Index>(t.cols()) != d)
      throw DimensionError("ClassicalChain: transition does not match previous alphabet");
    for (Index c = 0; c < d; ++c) {
      if ((t.col(c).array() < -1e-15).any()) throw Error("ClassicalChain: negative transition entry");
      if (std::abs(t.col(c).sum() - 1.0) > kPmfTolerance)
        throw Error("ClassicalChain: transition column does not sum to 1");
    }
    d = static_cast<Index>(t.rows());
  }
}

JointPMF joint_from_chain(const ClassicalChain& c) {
  c.validate();
  std::vector<Index> dims{c.initial.size()};
  std::vector<double> p = c.initial;
  for (const auto& t : c.transitions) {
    const Index d_new = static_cast<Index>(t.rows());
    const Index d_old = dims.back();
    std::vector<double> next(p.size() * d_new);
    for (Index flat = 0; flat < p.size(); ++flat) {
      const Index last = flat % d_old;
      for (Index x = 0; x < d_new; ++x) next[flat * d_new + x] = p[flat] * t(x, last);
    }
    p = std::move(next);
    dims.push_back(d_new);
  }
  return JointPMF(std::move(dims), std::move(p));
}

double shannon_entropy(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p)
    if (x > 0.0) h -= x * std::log2(x);
  return h;
}

double shannon_entropy(const JointPMF& p, const Subsystems& subset) {
  if (subset.empty()) return 0.0;
  return shannon_entropy(p.marginal(subset));
}

double classical_mi(const JointPMF& p, const Subsystems& a, const Subsystems& b) {
  require_disjoint({&a, &b}, p.variables());
  return shannon_entropy(p, a) + shannon_entropy(p, b) - shannon_entropy(p, join(a, b));
}

double classical_cmi(const JointPMF& p, const Subsystems& a, const Subsystems& b,
                     const Subsystems& c) {
  require_disjoint({&a, &b, &c}, p.variables());
  return shannon_entropy(p, join(a, c)) + shannon_entropy(p, join(b, c)) -
         shannon_entropy(p, join(join(a, b), c)) - shannon_entropy(p, c);
}

double markov_violation(const JointPMF& p) {
  double worst = 0.0;
  for (Index i = 2; i < p.variables(); ++i) {
    Subsystems past(i);
    std::iota(past.begin(), past.end(), Index{0});
    Subsystems older(past.begin(), past.end() - 1);
    // H(X_i | X_{i-1}) - H(X_i | X_{<i}) = I(X_i : X_{<i-1} | X_{i-1})
    worst = std::max(worst, classical_cmi(p, {i}, older, {i - 1}));
  }
  return worst;
}

bool is_markov(const JointPMF& p, double tol) { return markov_violation(p) <= tol; }

double cmmi_gap(const JointPMF& p, const std::vector<Index>& f) {
  if (p.variables() % 2 != 0) throw DimensionError("cmmi_gap: need an even number of variables");
  const Index n = p.variables() / 2;
  if (f.size() != n) throw DimensionError("cmmi_gap: permutation has wrong length");
  std::vector<bool> seen(n + 1, false);
  for (Index v : f) {
    if (v < 1 || v > n || seen[v]) throw Error("cmmi_gap: f is not a permutation of 1..n");
    seen[v] = true;
  }
  const auto x = [&](Index i) { return n - i; };      // 0-based variable of X_i
  const auto y = [&](Index j) { return n + j - 1; };  // 0-based variable of Y_j
  double gap = 0.0;
  for (Index i = 1; i <= n; ++i) {
    if (f[i - 1] == i) continue;
    gap += classical_mi(p, {x(i)}, {y(i)}) - classical_mi(p, {x(i)}, {y(f[i - 1])});
  }
  return gap;
}

ClassicalChain random_chain(Index variables, Index alphabet, std::uint64_t seed) {
  if (variables < 1 || alphabet < 1) throw DimensionError("random_chain: empty chain");
  auto rng = detail::make_rng(seed);
  ClassicalChain c;
  c.initial = simplex_point(alphabet, rng);
  for (Index v = 1; v < variables; ++v) {
    RealMatrix t(alphabet, alphabet);
    for (Index col = 0; col < alphabet; ++col) {
      const auto column = simplex_point(alphabet, rng);
      for (Index row = 0; row < alphabet; ++row) t(row, col) = column[row];
    }
    c.transitions.push_back(std::move(t));
  }
  return c;
}

JointPMF dephased_pmf(const ProcessTensor& pt) {
  const Index k = pt.slots();
  const Index d = pt.ports[pt.port_index("S1")].dim;
  const Instrument inst = computational_basis_instrument(d);
  std::vector<Index> dims(k, d);
  Index total = 1;
  for (Index i = 0; i < k; ++i) total *= d;
  std::vector<double> probs(total);
  std::vector<KrausMap> maps;
  for (Index flat = 0; flat < total; ++flat) {
    maps.clear();
    Index rem = flat;
    std::vector<Index> digits(k);
    for (Index i = k; i-- > 0;) {
      digits[i] = rem % d;
      rem /= d;
    }
    for (Index i = 0; i < k; ++i) maps.push_back(inst.elements[digits[i]]);
    probs[flat] = std::max(contract(pt, maps), 0.0);
  }
  const double sum = std::accumulate(probs.begin(), probs.end(), 0.0);
  for (auto& x : probs) x /= sum;
  return JointPMF(std::move(dims), std::move(probs));
}

std::vector<std::vector<Index>> permutations(Index n) {
  std::vector<Index> f(n);
  std::iota(f.begin(), f.end(), Index{1});
  std::vector<std::vector<Index>> out;
  do out.push_back(f);
  while (std::next_permutation(f.begin(), f.end()));
  return out;
}

}  // namespace qmono

#include "qmonogamy/witness.hpp"

#include <algorithm>
#include <limits>

namespace qmono {

namespace {

void require_length(const MarkovChainProcess& p, Index n, const char* what) {
  if (p.length() != n)
    throw DimensionError(std::string(what) + ": expected a chain of " + std::to_string(n) +
                         " states, got " + std::to_string(p.length()));
}

}  // namespace

void MarkovChainProcess::validate() const {
  Index d = initial.dim();
  for (const auto& ch : channels) {
    if (ch.d_in() != d) throw DimensionError("MarkovChainProcess: adjacent dimensions differ");
    d = ch.d_out();
  }
}

std::vector<std::vector<double>> MarkovChainProcess::coherent_table() const {
  validate();
  return chain_coherent_table(initial, channels);
}

double WitnessReport::value(const std::string& name) const {
  for (const auto& [n, v] : entries)
    if (n == name) return v;
  throw Error("WitnessReport: no entry named " + name);
}

double WitnessReport::min() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& e : entries) m = std::min(m, e.second);
  return m;
}

std::vector<std::string> WitnessReport::violated() const {
  std::vector<std::string> out;
  for (const auto& [n, v] : entries)
    if (v < -tolerance) out.push_back(n);
  return out;
}

double pair_sum_gap(const std::vector<std::vector<double>>& table, const CoherentPairs& lhs,
                    const CoherentPairs& rhs) {
  const auto at = [&](std::pair<Index, Index> rs) {
    if (rs.first >= rs.second || rs.second >= table.size())
      throw DimensionError("pair_sum_gap: invalid index pair");
    return table[rs.first][rs.second];
  };
  double gap = 0.0;
  for (const auto& rs : lhs) gap += at(rs);
  for (const auto& rs : rhs) gap -= at(rs);
  return gap;
}

WitnessReport qdpi_witnesses(const MarkovChainProcess& p) {
  require_length(p, 4, "qdpi_witnesses");
  const auto t = p.coherent_table();
  WitnessReport r;
  r.add("DP1", t[1][2] - t[1][3]);
  r.add("DP2", t[1][2] - t[1][4]);
  r.add("DP3", t[1][3] - t[1][4]);
  r.add("DP4", t[2][3] - t[2][4]);
  return r;
}

double m4_witness(const MarkovChainProcess& p) {
  require_length(p, 4, "m4_witness");
  const auto t = p.coherent_table();
  return t[1][4] + t[2][3] - t[1][3] - t[2][4];
}

WitnessReport extra_dpi_witnesses(const MarkovChainProcess& p) {
  if (p.length() != 3 && p.length() != 4)
    throw DimensionError("extra_dpi_witnesses: expected a chain of 3 or 4 states");
  const auto t = p.coherent_table();
  WitnessReport r;
  r.add("DP5", t[2][3] - t[1][3]);
  if (p.length() == 4) {
    r.add("DP6", t[2][3] - t[1][4]);
    r.add("DP7", t[2][4] - t[1][4]);
    r.add("DP8", t[3][4] - t[1][4]);
    r.add("DP9", t[3][4] - t[2][4]);
  }
  return r;
}

const std::vector<NamedPairs>& m6_definitions() {
  static const CoherentPairs lhs{{1, 6}, {2, 5}, {3, 4}};
  static const std::vector<NamedPairs> defs{
      {"M6a", lhs, {{1, 4}, {2, 6}, {3, 5}}},
      {"M6b", lhs, {{1, 5}, {2, 4}, {3, 6}}},
  };
  return defs;
}

const std::vector<NamedPairs>& m8_definitions() {
  static const CoherentPairs lhs{{1, 8}, {2, 7}, {3, 6}, {4, 5}};
  static const std::vector<NamedPairs> defs{
      {"M8a", lhs, {{1, 5}, {2, 8}, {3, 7}, {4, 6}}},
      {"M8b", lhs, {{1, 7}, {2, 5}, {3, 8}, {4, 6}}},
      {"M8c", lhs, {{1, 6}, {2, 8}, {3, 5}, {4, 7}}},
      {"M8d", lhs, {{1, 5}, {2, 6}, {3, 8}, {4, 7}}},
      {"M8e", lhs, {{1, 7}, {2, 6}, {3, 5}, {4, 8}}},
      {"M8f", lhs, {{1, 6}, {2, 5}, {3, 7}, {4, 8}}},
      {"M8g", lhs, {{1, 5}, {2, 6}, {3, 7}, {4, 8}}},
  };
  return defs;
}

namespace {

WitnessReport pair_witnesses(const MarkovChainProcess& p, const std::vector<NamedPairs>& defs) {
  const auto t = p.coherent_table();
  WitnessReport r;
  for (const auto& d : defs) r.add(d.name, pair_sum_gap(t, d.lhs, d.rhs));
  return r;
}

}  // namespace

WitnessReport m6_witnesses(const MarkovChainProcess& p) {
  require_length(p, 6, "m6_witnesses");
  return pair_witnesses(p, m6_definitions());
}

WitnessReport m8_witnesses(const MarkovChainProcess& p) {
  require_length(p, 8, "m8_witnesses");
  return pair_witnesses(p, m8_definitions());
}

CoherentPairs conjecture_pairs(Index n, const std::vector<Index>& f) {
  if (f.size() != n) throw DimensionError("conjecture_pairs: permutation has wrong length");
  std::vector<bool> seen(n + 1, false);
  for (Index v : f) {
    if (v < 1 || v > n || seen[v]) throw Error("conjecture_pairs: f is not a permutation of 1..n");
    seen[v] = true;
  }
  CoherentPairs pairs;
  for (Index i = 1; i <= n; ++i) pairs.emplace_back(n + 1 - i, n + f[i - 1]);
  return pairs;
}

double monogamy_conjecture_gap(const MarkovChainProcess& p, const std::vector<Index>& f) {
  if (p.length() % 2 != 0) throw DimensionError("monogamy_conjecture_gap: chain length must be even");
  const Index n = p.length() / 2;
  if (n > 5) throw DimensionError("monogamy_conjecture_gap: chain longer than 10 states");
  std::vector<Index> id(n);
  for (Index i = 0; i < n; ++i) id[i] = i + 1;
  const CoherentPairs rhs = conjecture_pairs(n, f);
  if (f == id) return 0.0;
  return pair_sum_gap(p.coherent_table(), conjecture_pairs(n, id), rhs);
}

double cqmi_monotonicity_gap(const DensityMatrix& rho, const KrausChannel& ch) {
  if (rho.signature().count() != 3)
    throw DimensionError("cqmi_monotonicity_gap: state must be over A ⊗ B ⊗ C");
  const DensityMatrix out = apply_to_subsystem(ch, rho, 1);
  return conditional_mutual_information(rho, {0}, {1}, {2}) -
         conditional_mutual_information(out, {0}, {1}, {2});
}

double mi_dpi_gap(const DensityMatrix& rho, const KrausChannel& ch) {
  if (rho.signature().count() != 2) throw DimensionError("mi_dpi_gap: state must be over A ⊗ B");
  const DensityMatrix out = apply_to_subsystem(ch, rho, 1);
  return mutual_information(rho, {0}, {1}) - mutual_information(out, {0}, {1});
}

}  // namespace qmono

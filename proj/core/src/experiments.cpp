#include "qmonogamy/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "detail/random.hpp"
#include "qmonogamy/parallel.hpp"

namespace qmono {

namespace {

constexpr Index kR = 0, kS = 1, kE = 2;

double h(const PureState& g, const Subsystems& subset) { return entropy(g, subset); }

void take_min(WitnessMinimum& m, double value, std::uint64_t seed) {
  if (value < m.value) m = {value, seed};
}

WitnessMinimum unset() { return {std::numeric_limits<double>::infinity(), 0}; }

}  // namespace

ComplexMatrix u_lambda(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw Error("u_lambda: λ must lie in [0, 1]");
  const double a = std::sqrt(1.0 - lambda);
  const double b = std::sqrt(lambda);
  ComplexMatrix u = ComplexMatrix::Zero(4, 4);
  u(0, 1) = -a;
  u(0, 2) = b;
  u(1, 0) = 1.0;
  u(2, 3) = 1.0;
  u(3, 1) = b;
  u(3, 2) = a;
  return u;
}

PureState example_initial_state() { return w_state(); }

std::vector<PureState> gamma_states(double lambda) {
  const ComplexMatrix u = u_lambda(lambda);
  const DimSignature sig{2, 2, 2};
  const std::vector<Index> se{kS, kE};
  std::vector<PureState> out{example_initial_state()};
  for (int i = 0; i < 3; ++i) {
    ComplexVector next = apply_local(out.back().amplitudes(), sig, se, u);
    next /= next.norm();
    out.emplace_back(std::move(next), sig);
  }
  return out;
}

std::vector<DensityMatrix> gamma_sequence(double lambda) {
  std::vector<DensityMatrix> out;
  for (const auto& g : gamma_states(lambda)) out.push_back(g.density());
  return out;
}

SystemEnvCircuit lambda_circuit(double lambda, Index steps) {
  return make_circuit(example_initial_state(), std::vector<ComplexMatrix>(steps, u_lambda(lambda)));
}

double SweepRow::value(const std::string& name) const {
  for (const auto& [n, v] : values)
    if (n == name) return v;
  throw Error("SweepRow: no column named " + name);
}

SweepRow nonmarkov_witness_row(double lambda) {
  const auto g = gamma_states(lambda);
  const auto& g2 = g[1];
  const auto& g3 = g[2];
  const auto& g4 = g[3];
  const auto ic = [](const PureState& s) { return h(s, {kS}) - h(s, {kR, kS}); };
  const auto s_rse = [](const PureState& s) { return h(s, {kS}) - h(s, {kR, kS, kE}); };
  SweepRow row{lambda, {}};
  row.values.emplace_back("DP1", ic(g2) - ic(g3));
  row.values.emplace_back("DP2", ic(g2) - ic(g4));
  row.values.emplace_back("DP3", ic(g3) - ic(g4));
  row.values.emplace_back("DP4", s_rse(g3) - s_rse(g4));
  row.values.emplace_back("M4", (h(g4, {kR, kS, kE}) - h(g4, {kR, kS})) +
                                    (h(g3, {kR, kS}) - h(g3, {kR, kS, kE})));
  return row;
}

MarkovChainProcess markov_reference_chain(double lambda) {
  const KrausChannel step =
      dilation_to_kraus(make_dilation(u_lambda(lambda), basis_state(2, 0).amplitudes(), 2, 2));
  return MarkovChainProcess{maximally_entangled(2).reduced({1}), {step, step}};
}

SweepRow extra_dpi_row(double lambda) {
  const auto g = gamma_states(lambda);
  const auto& g3 = g[2];
  const auto& g4 = g[3];
  const auto rse = [](const PureState& s) { return h(s, {kR, kS, kE}); };
  SweepRow row{lambda, {}};
  row.values.emplace_back("DP5_markov", extra_dpi_witnesses(markov_reference_chain(lambda)).value("DP5"));
  row.values.emplace_back("DP5", h(g3, {kR, kS}) - rse(g3));
  row.values.emplace_back("DP6", (h(g3, {kS}) - rse(g3)) - (h(g4, {kS}) - h(g4, {kR, kS})));
  row.values.emplace_back("DP7", (h(g4, {kS}) - rse(g4)) - (h(g4, {kS}) - h(g4, {kR, kS})));
  return row;
}

SweepRow mqmmi_row(double lambda) {
  const SystemEnvCircuit c = lambda_circuit(lambda);
  SweepRow row{lambda, {}};
  row.values.emplace_back("M4_q1", mqmmi_witness(c, MultitimeKind::Q1));
  row.values.emplace_back("M4_q2", mqmmi_witness(c, MultitimeKind::Q2));
  row.values.emplace_back("M4_q3", mqmmi_witness(c, MultitimeKind::Q3));
  return row;
}

void LambdaSweepConfig::validate() const {
  if (!(std::isfinite(lambda_min) && std::isfinite(lambda_max) && std::isfinite(step)))
    throw Error("sweep: non-finite grid parameters");
  if (lambda_min < 0.0 || lambda_max > 1.0 || lambda_min > lambda_max)
    throw Error("sweep: need 0 <= lambda-min <= lambda-max <= 1");
  if (!(step > 0.0)) throw Error("sweep: step must be positive");
}

std::vector<double> lambda_grid(const LambdaSweepConfig& cfg) {
  cfg.validate();
  const double span = cfg.lambda_max - cfg.lambda_min;
  const auto n = static_cast<Index>(std::floor(span / cfg.step + 0.5));
  std::vector<double> grid;
  for (Index i = 0; i <= n; ++i) {
    const double x = cfg.lambda_min + static_cast<double>(i) * cfg.step;
    if (x > cfg.lambda_max + 0.5 * cfg.step) break;
    grid.push_back(std::min(x, cfg.lambda_max));
  }
  if (cfg.lambda_max - grid.back() < 0.5 * cfg.step)
    grid.back() = cfg.lambda_max;
  else
    grid.push_back(cfg.lambda_max);
  return grid;
}

std::vector<SweepRow> sweep(const LambdaSweepConfig& cfg, const std::function<SweepRow(double)>& row) {
  const auto grid = lambda_grid(cfg);
  return parallel_map(grid.size(), [&](std::size_t i) { return row(grid[i]); });
}

MarkovChainProcess DilatedChain::chain() const {
  std::vector<KrausChannel> channels;
  for (const auto& s : steps) channels.push_back(dilation_to_kraus(s));
  MarkovChainProcess p{initial, std::move(channels)};
  p.validate();
  return p;
}

PureState DilatedChain::purified_circuit() const {
  const Purification p = purify(initial);
  const Index d = initial.dim();
  ComplexVector psi = p.pure.amplitudes();
  std::vector<Index> dims{d, d};
  for (const auto& s : steps) {
    if (s.d_in != d || s.d_out != d || s.d_ancilla != s.d_env)
      throw DimensionError("purified_circuit: steps must map S ⊗ F to S ⊗ E with E ≅ F");
    psi = kron(psi, s.ancilla);
    dims.push_back(s.d_env);
    const std::vector<Index> targets{1, dims.size() - 1};
    psi = apply_local(psi, DimSignature(dims), targets, s.unitary);
  }
  // (R, S, E_1, ...) -> (R, E_1, ..., S)
  std::vector<Index> order{0};
  for (Index i = 2; i < dims.size(); ++i) order.push_back(i);
  order.push_back(1);
  ComplexVector out = permute_subsystems(psi, DimSignature(dims), order);
  out /= out.norm();
  return PureState(std::move(out), DimSignature(dims).select(order));
}

DilatedChain random_dilated_chain(Index states, Index d_s, Index d_env, std::uint64_t seed) {
  if (states < 2) throw DimensionError("random_dilated_chain: need at least two states");
  auto rng = detail::make_rng(seed);
  DilatedChain c{random_density(d_s, d_s, rng()), {}};
  for (Index i = 1; i < states; ++i) c.steps.push_back(random_channel(d_s, d_s, d_env, rng()));
  return c;
}

const std::vector<CmiTerm>& ssa_certificate(const std::string& witness) {
  static const CmiTerm a8{{1}, {7}, {2, 3, 4, 5, 6}};
  static const std::map<std::string, std::vector<CmiTerm>> certs{
      {"M4", {{{1}, {3}, {2}}}},
      {"M6a", {{{1}, {5}, {2, 3, 4}}, {{1, 2}, {4}, {3}}}},
      {"M6b", {{{1}, {5}, {2, 3, 4}}, {{2}, {4, 5}, {3}}}},
      {"M8a", {a8, {{1, 2}, {6}, {3, 4, 5}}, {{1, 2, 3}, {5}, {4}}}},
      {"M8b", {a8, {{2}, {6, 7}, {3, 4, 5}}, {{2, 3}, {5}, {4}}}},
      {"M8c", {a8, {{1, 2}, {6}, {3, 4, 5}}, {{3}, {5, 6}, {4}}}},
      {"M8d", {a8, {{2}, {6, 7}, {3, 4, 5}}, {{1, 2, 3}, {5, 6}, {4}}}},
      {"M8e", {a8, {{2}, {6, 7}, {3, 4, 5}}, {{3}, {5, 6, 7}, {4}}}},
      {"M8f", {a8, {{1, 2}, {6}, {3, 4, 5}}, {{2, 3}, {5, 6, 7}, {4}}}},
      {"M8g", {a8, {{1, 2, 3}, {5, 6}, {4}}, {{2}, {6, 7}, {3, 4, 5}}, {{3}, {7}, {4, 5, 6}}}},
  };
  const auto it = certs.find(witness);
  if (it == certs.end()) throw Error("no certificate for witness " + witness);
  return it->second;
}

double certificate_value(const PureState& circuit, const std::vector<CmiTerm>& terms) {
  double sum = 0.0;
  for (const auto& t : terms) sum += conditional_mutual_information(circuit, t.a, t.b, t.c);
  return sum;
}

double dp5_certificate(const PureState& circuit) {
  return entropy(circuit, {1, 2}) - entropy(circuit, {2});
}

std::vector<std::string> VerifySummary::failures() const {
  std::vector<std::string> out;
  for (const auto& [name, m] : witness_minima)
    if (m.value < -kInequalityTolerance) out.push_back(name);
  if (ssa_minimum.value < -kInequalityTolerance) out.push_back("ssa");
  if (certificate_mismatch > 1e-7) out.push_back("certificate");
  if (adjoint_identity_deviation > 1e-12) out.push_back("adjoint_identity");
  if (adjoint_unitality_deviation > 1e-10) out.push_back("adjoint_unitality");
  if (cqmi_minimum.value < -kInequalityTolerance) out.push_back("cqmi");
  if (mi_dpi_minimum.value < -kInequalityTolerance) out.push_back("mi_dpi");
  if (classical_cmmi_minimum.value < -kPmfTolerance) out.push_back("classical_cmmi");
  return out;
}

std::uint64_t sample_seed(std::uint64_t seed, Index i) {
  return seed * 0x100000001B3ULL + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(i) + 1);
}

WitnessReport chain_witnesses(const MarkovChainProcess& p) {
  switch (p.length()) {
    case 4: {
      WitnessReport r = qdpi_witnesses(p);
      r.add("M4", m4_witness(p));
      return r;
    }
    case 6: return m6_witnesses(p);
    case 8: return m8_witnesses(p);
    default: throw DimensionError("chain_witnesses: chains of 4, 6 or 8 states only");
  }
}

namespace {

struct SampleResult {
  std::uint64_t seed = 0;
  WitnessReport witnesses;
  double ssa = std::numeric_limits<double>::infinity();
  double mismatch = 0.0;
  double adjoint = 0.0;
  double unitality = 0.0;
  double cqmi = 0.0;
  double mi = 0.0;
  double cmmi = 0.0;
};

SampleResult run_sample(const VerifyConfig& cfg, Index i) {
  SampleResult out;
  out.seed = sample_seed(cfg.seed, i);
  auto rng = detail::make_rng(out.seed);
  const Index span = cfg.d_env_max >= 2 ? cfg.d_env_max - 1 : 1;
  const Index d_env = 2 + static_cast<Index>(rng() % span);

  const DilatedChain dc = random_dilated_chain(cfg.steps, cfg.d_s, d_env, rng());
  out.witnesses = chain_witnesses(dc.chain());

  if (i < cfg.certificate_samples) {
    const PureState circuit = dc.purified_circuit();
    // Certificates share most marginals, so cache entropies by subset.
    std::map<Subsystems, double> cache;
    const auto h = [&](Subsystems s) {
      std::sort(s.begin(), s.end());
      const auto it = cache.find(s);
      if (it != cache.end()) return it->second;
      return cache[s] = entropy(circuit, s);
    };
    const auto cat = [](Subsystems a, const Subsystems& b) {
      a.insert(a.end(), b.begin(), b.end());
      return a;
    };
    for (const auto& [name, value] : out.witnesses.entries) {
      if (name.rfind("DP", 0) == 0) continue;
      double sum = 0.0;
      for (const auto& t : ssa_certificate(name)) {
        const double cmi =
            h(cat(t.a, t.c)) + h(cat(t.b, t.c)) - h(cat(cat(t.a, t.b), t.c)) - h(t.c);
        out.ssa = std::min(out.ssa, cmi);
        sum += cmi;
      }
      out.mismatch = std::max(out.mismatch, std::abs(value - sum));
    }
  }

  const KrausChannel a = dilation_to_kraus(random_channel(cfg.d_s, cfg.d_s, d_env, rng()));
  out.adjoint = adjoint_choi_deviation(a);
  out.unitality = adjoint_channel(a).unitality_defect();

  const Index d = cfg.d_s;
  const DimSignature abc{d, d, d};
  const Index total = abc.total();
  const DensityMatrix mixed = random_density(total, 1 + rng() % total, rng());
  const DensityMatrix rho = validate_density(mixed.matrix(), abc);
  const KrausChannel b = dilation_to_kraus(random_channel(d, d, 2, rng()));
  out.cqmi = cqmi_monotonicity_gap(rho, b);
  out.mi = mi_dpi_gap(rho.reduced({0, 1}), b);

  const JointPMF pmf = joint_from_chain(random_chain(cfg.steps, 2, rng()));
  out.cmmi = std::numeric_limits<double>::infinity();
  for (const auto& f : permutations(cfg.steps / 2)) out.cmmi = std::min(out.cmmi, cmmi_gap(pmf, f));
  return out;
}

}  // namespace

VerifySummary random_markov_verify(const VerifyConfig& cfg) {
  if (cfg.steps != 4 && cfg.steps != 6 && cfg.steps != 8)
    throw Error("verify: steps must be 4, 6 or 8");
  if (cfg.samples < 1) throw Error("verify: samples must be positive");
  if (cfg.d_s < 2) throw DimensionError("verify: system dimension must be at least 2");

  const auto results =
      parallel_map(cfg.samples, [&](std::size_t i) { return run_sample(cfg, i); });

  VerifySummary s;
  s.ssa_minimum = unset();
  s.cqmi_minimum = unset();
  s.mi_dpi_minimum = unset();
  s.classical_cmmi_minimum = unset();
  for (const auto& r : results) {
    for (const auto& [name, value] : r.witnesses.entries) {
      auto [it, inserted] = s.witness_minima.try_emplace(name, WitnessMinimum{value, r.seed});
      if (!inserted) take_min(it->second, value, r.seed);
    }
    take_min(s.ssa_minimum, r.ssa, r.seed);
    s.certificate_mismatch = std::max(s.certificate_mismatch, r.mismatch);
    s.adjoint_identity_deviation = std::max(s.adjoint_identity_deviation, r.adjoint);
    s.adjoint_unitality_deviation = std::max(s.adjoint_unitality_deviation, r.unitality);
    take_min(s.cqmi_minimum, r.cqmi, r.seed);
    take_min(s.mi_dpi_minimum, r.mi, r.seed);
    take_min(s.classical_cmmi_minimum, r.cmmi, r.seed);
  }
  return s;
}

}  // namespace qmono

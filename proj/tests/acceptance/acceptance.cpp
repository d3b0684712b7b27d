// Runs the ten acceptance criteria and prints one PASS/FAIL line for each.
// Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qmonogamy/classical.hpp"
#include "qmonogamy/experiments.hpp"

using namespace qmono;

namespace {

constexpr double kEps = 1e-9;
constexpr double kStep = 0.01;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool near_boundary(double lambda, std::initializer_list<double> edges) {
  for (double e : edges)
    if (std::abs(lambda - e) <= kStep + 1e-12) return true;
  return false;
}

Outcome qmmi_regions() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = sweep({0.0, 1.0, kStep, 0}, nonmarkov_witness_row);
  const double dt = seconds_since(t0);
  int bad = 0, slack = 0;
  for (const auto& r : rows) {
    const double l = r.lambda;
    int dp_neg = 0;
    bool dp_ok = true;
    for (const char* n : {"DP1", "DP2", "DP3", "DP4"}) {
      dp_neg += r.value(n) < -kEps;
      dp_ok = dp_ok && r.value(n) >= -kEps;
    }
    bool ok = true;
    if (l > 1e-12 && l < 0.15 - 1e-12) ok = r.value("M4") < -kEps && dp_ok;
    else if (l > 0.85 + 1e-12 && l < 1.0 - 1e-12) ok = r.value("M4") >= -kEps && dp_neg >= 2;
    if (!ok) (near_boundary(l, {0.15, 0.85}) ? slack : bad) += 1;
  }
  const bool pass = bad == 0 && dt < 10.0;
  return {pass, std::to_string(rows.size()) + " rows, " + std::to_string(bad) + " region violations, " +
                    std::to_string(slack) + " boundary-cell misses, " + fmt("%.2f s", dt)};
}

Outcome mqmmi_regions() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = sweep({0.0, 1.0, kStep, 0}, mqmmi_row);
  const double dt = seconds_since(t0);
  std::vector<double> ok_q1;
  int q23_bad = 0;
  for (const auto& r : rows) {
    if (r.value("M4_q1") >= -kEps) ok_q1.push_back(r.lambda);
    if (r.lambda > 0.01 + 1e-12 && r.lambda < 0.99 - 1e-12)
      q23_bad += (r.value("M4_q2") >= -kEps) + (r.value("M4_q3") >= -kEps);
  }
  bool contiguous = !ok_q1.empty();
  for (std::size_t i = 1; i < ok_q1.size(); ++i) contiguous = contiguous && ok_q1[i] - ok_q1[i - 1] < 1.5 * kStep;
  const double lo = ok_q1.empty() ? NAN : ok_q1.front(), hi = ok_q1.empty() ? NAN : ok_q1.back();
  const bool region = contiguous && lo <= 0.31 + 1e-12 && hi >= 0.54 - 1e-12 && lo >= 0.29 - 1e-12 && hi <= 0.56 + 1e-12;
  const bool pass = region && q23_bad == 0 && dt < 60.0;
  return {pass, "M4_q1 >= -eps on [" + fmt("%.2f", lo) + ", " + fmt("%.2f", hi) + "]" +
                    (contiguous ? "" : " (not contiguous)") + ", " + std::to_string(q23_bad) +
                    " q2/q3 non-violations, " + fmt("%.2f s", dt)};
}

Outcome extra_dpi_signs() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = sweep({0.0, 1.0, kStep, 0}, extra_dpi_row);
  const double dt = seconds_since(t0);
  double lowest = INFINITY;
  for (const auto& r : rows)
    for (const auto& [n, v] : r.values) lowest = std::min(lowest, v);
  return {lowest >= -kEps && dt < 30.0, "min over DP5_markov, DP5, DP6, DP7 = " + fmt("%.3e", lowest) + ", " + fmt("%.2f s", dt)};
}

Outcome verify_summary(const VerifyConfig& cfg, const std::vector<std::string>& names, double cert_tol) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto s = random_markov_verify(cfg);
  double lowest = INFINITY;
  for (const auto& n : names) lowest = std::min(lowest, s.witness_minima.at(n).value);
  const bool pass = lowest >= -kEps && s.certificate_mismatch <= cert_tol;
  return {pass, std::to_string(cfg.samples) + " chains of " + std::to_string(cfg.steps) + " states: min witness " +
                    fmt("%.3e", lowest) + ", certificate mismatch " + fmt("%.1e", s.certificate_mismatch) + " on " +
                    std::to_string(cfg.certificate_samples) + ", " + fmt("%.1f s", seconds_since(t0))};
}

Outcome four_step_chains() {
  VerifyConfig cfg;
  cfg.steps = 4;
  cfg.samples = 1000;
  cfg.d_env_max = 4;
  cfg.certificate_samples = 100;
  return verify_summary(cfg, {"DP1", "DP2", "DP3", "DP4", "M4"}, 1e-8);
}

Outcome six_and_eight_step_chains() {
  VerifyConfig c6;
  c6.steps = 6;
  c6.samples = 300;
  c6.d_env_max = 2;
  c6.certificate_samples = 20;
  const auto a = verify_summary(c6, {"M6a", "M6b"}, 1e-7);
  VerifyConfig c8 = c6;
  c8.steps = 8;
  c8.samples = 100;
  std::vector<std::string> names;
  for (const auto& d : m8_definitions()) names.push_back(d.name);
  const auto b = verify_summary(c8, names, 1e-7);
  return {a.pass && b.pass, a.detail + "; " + b.detail};
}

Outcome local_monotonicity() {
  double cqmi = INFINITY, mi = INFINITY;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const Index d = 2 + seed % 2;
    const auto rho = validate_density(random_density(2 * d * 2, 1 + seed % 8, seed).matrix(), {2, d, 2});
    const auto ch = dilation_to_kraus(random_channel(d, d, 1 + seed % 3, seed + 77));
    cqmi = std::min(cqmi, cqmi_monotonicity_gap(rho, ch));
    mi = std::min(mi, mi_dpi_gap(validate_density(rho.reduced({0, 1}).matrix(), {2, d}), ch));
  }
  return {cqmi >= -kEps && mi >= -kEps, "500 pairs: min CQMI gap " + fmt("%.3e", cqmi) + ", min MI gap " + fmt("%.3e", mi)};
}

Outcome coherent_info_equivalences() {
  double equiv = 0.0, purif = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Index d = 2 + seed % 2;
    const auto rho = random_density(d, 1 + seed % d, seed);
    const auto ch = dilation_to_kraus(random_channel(d, d, 1 + seed % 3, seed + 300));
    const double ic = coherent_information(rho, ch);

    const auto p = purify(rho);
    const auto out = apply_to_subsystem(ch, p.pure.density(), 1);
    equiv = std::max(equiv, std::abs(mutual_information(out, {0}, {1}) - entropy(out, {0}) - ic));

    // Second purification: reference rotated by a random isometry d -> d + 1.
    const Index dr = d + 1;
    const ComplexMatrix v = random_unitary(dr, seed + 900).leftCols(d);
    const ComplexVector psi = p.pure.amplitudes();
    ComplexVector rotated = ComplexVector::Zero(dr * d);
    for (Index r = 0; r < d; ++r)
      for (Index s = 0; s < d; ++s)
        for (Index q = 0; q < dr; ++q) rotated(q * d + s) += v(q, r) * psi(r * d + s);
    purif = std::max(purif, std::abs(coherent_information(PureState(rotated, {dr, d}), ch) - ic));
  }
  return {equiv <= kEps && purif <= kEps,
          "100 pairs: max |I(R:S2) - H(R) - Ic| " + fmt("%.1e", equiv) + ", purification spread " + fmt("%.1e", purif)};
}

Outcome adjoint_identity() {
  double dev = 0.0, unital = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Index d = 2 + seed % 3;
    const auto ch = dilation_to_kraus(random_channel(d, d, 1 + seed % 4, seed + 5000));
    dev = std::max(dev, adjoint_choi_deviation(ch));
    unital = std::max(unital, adjoint_channel(ch).unitality_defect());
  }
  return {dev <= 1e-12 && unital <= 1e-10,
          "100 channels: max identity deviation " + fmt("%.1e", dev) + ", max unitality defect " + fmt("%.1e", unital)};
}

Outcome process_tensors() {
  double factor = 0.0, contraction = 0.0, causal = 0.0, kinds = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto init = random_pure_state({2, 2}, seed);
    std::vector<StinespringDilation> steps;
    for (Index i = 0; i < 3; ++i) steps.push_back(random_channel(2, 2, 2 + (seed + i) % 2, seed * 7 + i + 11));
    const auto c = markov_circuit(init, steps);
    const auto pt = build_process_tensor(c, 4);
    factor = std::max(factor, markov_factorization_gap(pt));
    causal = std::max(causal, causality_violation(pt));

    std::vector<KrausMap> maps;
    for (Index i = 0; i < 3; ++i) maps.push_back(KrausMap({dilation_to_kraus(random_channel(2, 2, 2, seed * 3 + i)).ops()[0]}));
    contraction = std::max(contraction, max_abs_diff(contract_open(pt, maps), oracle::simulate(c, maps)));

    const double q1 = mqmmi_witness(c, MultitimeKind::Q1);
    const double q2 = mqmmi_witness(c, MultitimeKind::Q2);
    const double q3 = mqmmi_witness(c, MultitimeKind::Q3);
    kinds = std::max({kinds, std::abs(q1 - q2), std::abs(q1 - q3), std::abs(q2 - q3)});
  }
  const double lam = markov_factorization_gap(build_process_tensor(lambda_circuit(0.5), 4));
  const bool pass = factor <= 1e-9 && lam > 1e-3 && contraction <= 1e-10 && causal <= 1e-9 && kinds <= 1e-9;
  return {pass, "100 Markov tensors: factorization " + fmt("%.1e", factor) + ", contraction " + fmt("%.1e", contraction) +
                    ", causality " + fmt("%.1e", causal) + ", MQMMI kind spread " + fmt("%.1e", kinds) +
                    "; lambda=0.5 factorization gap " + fmt("%.3e", lam)};
}

Outcome classical_suite() {
  double swap_min = INFINITY, perm_min = INFINITY;
  for (std::uint64_t seed = 0; seed < 1000; ++seed)
    swap_min = std::min(swap_min, cmmi_gap(joint_from_chain(random_chain(4, 2, seed)), {2, 1}));
  for (std::uint64_t seed = 0; seed < 100; ++seed)
    for (Index n = 1; n <= 4; ++n) {
      const auto p = joint_from_chain(random_chain(2 * n, 2, 10000 + seed * 4 + n));
      for (const auto& f : permutations(n)) perm_min = std::min(perm_min, cmmi_gap(p, f));
    }
  int dephased_bad = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::vector<StinespringDilation> steps;
    for (Index i = 0; i < 3; ++i) steps.push_back(random_channel(2, 2, 2, seed * 5 + i));
    const auto pt = build_process_tensor(markov_circuit(random_pure_state({2, 2}, seed), steps), 4);
    dephased_bad += !is_markov(dephased_pmf(pt), 1e-9);
  }
  const bool pass = swap_min >= -1e-12 && perm_min >= -1e-12 && dephased_bad == 0;
  return {pass, "min swap gap " + fmt("%.3e", swap_min) + " over 1000 chains, min permutation gap " + fmt("%.3e", perm_min) +
                    " for n <= 4, " + std::to_string(dephased_bad) + "/20 dephased tensors non-Markov"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"1 qmmi regions", qmmi_regions},
      {"2 mqmmi regions", mqmmi_regions},
      {"3 extra DPIs non-negative", extra_dpi_signs},
      {"4 four-step Markov chains", four_step_chains},
      {"5 six- and eight-step Markov chains", six_and_eight_step_chains},
      {"6 CQMI and MI monotonicity", local_monotonicity},
      {"7 coherent information equivalences", coherent_info_equivalences},
      {"8 adjoint Choi identity", adjoint_identity},
      {"9 process tensor consistency", process_tensors},
      {"10 classical chains", classical_suite},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("criterion %s: %s (%s)\n", name, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  return failed;
}

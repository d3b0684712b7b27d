#include "qmonogamy/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

namespace qmono::cli {

namespace {

using nlohmann::json;

struct SweepOptions {
  LambdaSweepConfig grid;
  std::string output;
  std::string format = "csv";
  std::string svg;
};

struct VerifyOptions {
  Index steps = 4;
  std::optional<Index> samples;
  std::uint64_t seed = 1;
  std::string channel;
  std::string output;
  std::string format = "json";
};

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open " + path + " for writing");
  f << text;
  if (!f.flush()) throw UsageError("failed writing " + path);
}

std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

json minimum_json(const WitnessMinimum& m) {
  if (!std::isfinite(m.value)) return json{{"value", nullptr}, {"seed", m.seed}};
  return json{{"value", m.value}, {"seed", m.seed}};
}

void add_grid_flags(CLI::App* sub, SweepOptions& o) {
  sub->add_option("--lambda-min", o.grid.lambda_min, "Smallest λ")->capture_default_str();
  sub->add_option("--lambda-max", o.grid.lambda_max, "Largest λ")->capture_default_str();
  sub->add_option("--step", o.grid.step, "Grid spacing")->capture_default_str();
  sub->add_option("--seed", o.grid.seed, "Seed (sweeps are deterministic; kept for symmetry)");
  sub->add_option("--output", o.output, "Output file (default stdout)");
  sub->add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--svg", o.svg, "Also write an SVG line chart to this path");
}

int run_sweep(const std::string& command, const SweepOptions& o,
              const std::function<SweepRow(double)>& row, std::ostream& out) {
  const auto rows = sweep(o.grid, row);
  write_text(o.output, o.format == "csv" ? rows_to_csv(rows) : rows_to_json(command, rows), out);
  if (!o.svg.empty()) write_text(o.svg, rows_to_svg(command, rows), out);
  return kPass;
}

int run_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  if (o.steps != 4 && o.steps != 6 && o.steps != 8) throw UsageError("--steps must be 4, 6 or 8");

  std::optional<KrausChannel> supplied;
  if (!o.channel.empty()) supplied = channel_from_json(read_text(o.channel));

  VerifyConfig cfg;
  cfg.steps = o.steps;
  cfg.samples = o.samples.value_or(o.steps == 4 ? 1000 : o.steps == 6 ? 300 : 100);
  if (cfg.samples < 1) throw UsageError("--samples must be positive");
  cfg.seed = o.seed;
  cfg.d_env_max = o.steps == 4 ? 4 : 2;
  cfg.certificate_samples = std::min<Index>(cfg.samples, o.steps == 4 ? 100 : 20);

  VerifySummary summary = random_markov_verify(cfg);
  json doc = json::parse(summary_to_json(cfg, summary));
  if (supplied) {
    doc["supplied_channel"] = {
        {"d_in", supplied->d_in()},
        {"d_out", supplied->d_out()},
        {"trace_preservation_defect", supplied->trace_preservation_defect()},
    };
    if (supplied->d_in() == supplied->d_out()) {
      const double dev = adjoint_choi_deviation(*supplied);
      doc["supplied_channel"]["adjoint_identity_deviation"] = dev;
      doc["supplied_channel"]["adjoint_unitality_deviation"] =
          adjoint_channel(*supplied).unitality_defect();
    }
  }

  if (o.format == "json") {
    write_text(o.output, doc.dump(2) + "\n", out);
  } else {
    std::string csv = "check,value\n";
    for (const auto& [name, m] : summary.witness_minima) csv += name + "," + format_number(m.value) + "\n";
    csv += "ssa_minimum," + format_number(summary.ssa_minimum.value) + "\n";
    csv += "certificate_max_mismatch," + format_number(summary.certificate_mismatch) + "\n";
    csv += "adjoint_identity_max_deviation," + format_number(summary.adjoint_identity_deviation) + "\n";
    csv += "adjoint_unitality_max_deviation," + format_number(summary.adjoint_unitality_deviation) + "\n";
    csv += "cqmi_minimum," + format_number(summary.cqmi_minimum.value) + "\n";
    csv += "mi_dpi_minimum," + format_number(summary.mi_dpi_minimum.value) + "\n";
    csv += "classical_cmmi_minimum," + format_number(summary.classical_cmmi_minimum.value) + "\n";
    write_text(o.output, csv, out);
  }

  const auto failures = summary.failures();
  if (failures.empty()) return kPass;
  err << "violation:";
  for (const auto& f : failures) err << ' ' << f;
  err << " (counterexample seed " << doc["counterexample_seed"] << ")\n";
  return kViolation;
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::scientific, 11);
  return std::string(buf, res.ptr);
}

std::string rows_to_csv(const std::vector<SweepRow>& rows) {
  std::string s = "lambda";
  if (!rows.empty())
    for (const auto& [name, v] : rows.front().values) s += "," + name;
  s += "\n";
  for (const auto& r : rows) {
    s += format_number(r.lambda);
    for (const auto& [name, v] : r.values) s += "," + format_number(v);
    s += "\n";
  }
  return s;
}

std::string rows_to_json(const std::string& command, const std::vector<SweepRow>& rows) {
  json cols = json::array({"lambda"});
  if (!rows.empty())
    for (const auto& [name, v] : rows.front().values) cols.push_back(name);
  json data = json::array();
  for (const auto& r : rows) {
    json row{{"lambda", r.lambda}};
    for (const auto& [name, v] : r.values) row[name] = v;
    data.push_back(std::move(row));
  }
  return json{{"command", command}, {"columns", cols}, {"rows", data}}.dump(2) + "\n";
}

std::string rows_to_svg(const std::string& title, const std::vector<SweepRow>& rows) {
  constexpr double W = 640, H = 400, L = 60, R = 130, T = 40, B = 50;
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};
  double lo = 0.0, hi = 0.0;
  double xmin = rows.empty() ? 0.0 : rows.front().lambda, xmax = rows.empty() ? 1.0 : rows.back().lambda;
  if (xmax <= xmin) xmax = xmin + 1.0;
  for (const auto& r : rows)
    for (const auto& [n, v] : r.values)
      if (std::isfinite(v)) lo = std::min(lo, v), hi = std::max(hi, v);
  if (hi <= lo) hi = lo + 1.0;
  const auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
  const auto py = [&](double y) { return T + (hi - y) / (hi - lo) * (H - T - B); };
  const auto num = [](double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
    return std::string(buf, res.ptr);
  };

  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" "
                  "font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + num(W / 2) + "\" y=\"20\" text-anchor=\"middle\">" + title + "</text>\n";
  s += "<rect x=\"" + num(L) + "\" y=\"" + num(T) + "\" width=\"" + num(W - L - R) + "\" height=\"" +
       num(H - T - B) + "\" fill=\"none\" stroke=\"black\"/>\n";
  s += "<line x1=\"" + num(L) + "\" y1=\"" + num(py(0)) + "\" x2=\"" + num(W - R) + "\" y2=\"" +
       num(py(0)) + "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
  for (double x : {xmin, (xmin + xmax) / 2, xmax})
    s += "<text x=\"" + num(px(x)) + "\" y=\"" + num(H - B + 16) + "\" text-anchor=\"middle\">" + num(x) + "</text>\n";
  for (double y : {lo, 0.0, hi})
    s += "<text x=\"" + num(L - 6) + "\" y=\"" + num(py(y) + 4) + "\" text-anchor=\"end\">" + num(y) + "</text>\n";
  s += "<text x=\"" + num((L + W - R) / 2) + "\" y=\"" + num(H - 12) + "\" text-anchor=\"middle\">lambda</text>\n";

  if (!rows.empty()) {
    const auto& names = rows.front().values;
    for (Index c = 0; c < names.size(); ++c) {
      const char* color = colors[c % 6];
      std::string pts;
      for (const auto& r : rows) {
        const double v = r.values[c].second;
        if (!std::isfinite(v)) continue;
        pts += num(px(r.lambda)) + "," + num(py(v)) + " ";
      }
      s += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
      const double ly = T + 16.0 * static_cast<double>(c) + 8;
      s += "<line x1=\"" + num(W - R + 10) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(W - R + 30) + "\" y2=\"" +
           num(ly) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
      s += "<text x=\"" + num(W - R + 36) + "\" y=\"" + num(ly + 4) + "\">" + names[c].first + "</text>\n";
    }
  }
  s += "</svg>\n";
  return s;
}

std::string summary_to_json(const VerifyConfig& cfg, const VerifySummary& s) {
  json minima = json::object();
  for (const auto& [name, m] : s.witness_minima) minima[name] = minimum_json(m);
  const auto failures = s.failures();

  // Seed of the sample behind the first failed check, if any.
  json counterexample = nullptr;
  if (!failures.empty()) {
    const std::string& f = failures.front();
    if (s.witness_minima.count(f)) counterexample = s.witness_minima.at(f).seed;
    else if (f == "ssa") counterexample = s.ssa_minimum.seed;
    else if (f == "cqmi") counterexample = s.cqmi_minimum.seed;
    else if (f == "mi_dpi") counterexample = s.mi_dpi_minimum.seed;
    else if (f == "classical_cmmi") counterexample = s.classical_cmmi_minimum.seed;
  }

  json doc{
      {"steps", cfg.steps},
      {"samples", cfg.samples},
      {"seed", cfg.seed},
      {"certificate_samples", cfg.certificate_samples},
      {"tolerance", kInequalityTolerance},
      {"witness_minima", minima},
      {"ssa_minimum", minimum_json(s.ssa_minimum)},
      {"certificate_max_mismatch", s.certificate_mismatch},
      {"adjoint_identity_max_deviation", s.adjoint_identity_deviation},
      {"adjoint_unitality_max_deviation", s.adjoint_unitality_deviation},
      {"cqmi_minimum", minimum_json(s.cqmi_minimum)},
      {"mi_dpi_minimum", minimum_json(s.mi_dpi_minimum)},
      {"classical_cmmi_minimum", minimum_json(s.classical_cmmi_minimum)},
      {"failures", failures},
      {"passed", failures.empty()},
      {"counterexample_seed", counterexample},
  };
  return doc.dump(2);
}

KrausChannel channel_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("channel file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("kraus") || !doc["kraus"].is_array() || doc["kraus"].empty())
    throw UsageError("channel file needs a non-empty \"kraus\" array");
  std::vector<ComplexMatrix> ops;
  for (const auto& op : doc["kraus"]) {
    if (!op.is_array() || op.empty() || !op[0].is_array())
      throw UsageError("each Kraus operator must be a list of rows");
    const Index rows = op.size(), cols = op[0].size();
    ComplexMatrix k(rows, cols);
    for (Index i = 0; i < rows; ++i) {
      if (!op[i].is_array() || op[i].size() != cols) throw UsageError("ragged Kraus operator");
      for (Index j = 0; j < cols; ++j) {
        const auto& e = op[i][j];
        if (e.is_number()) k(i, j) = e.get<double>();
        else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
          k(i, j) = Complex(e[0].get<double>(), e[1].get<double>());
        else throw UsageError("Kraus entries must be numbers or [re, im] pairs");
      }
    }
    ops.push_back(std::move(k));
  }
  return KrausChannel(std::move(ops));
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum Markov monogamy witnesses: λ sweeps and randomized verification"};
  app.name("qmonogamy");
  app.require_subcommand(1);

  SweepOptions qmmi, mqmmi, extra;
  VerifyOptions verify;
  auto* s1 = app.add_subcommand("sweep-qmmi", "DP1..DP4 and M4 on the γ-sequence example");
  add_grid_flags(s1, qmmi);
  auto* s2 = app.add_subcommand("sweep-mqmmi", "M4_q1..M4_q3 on the λ circuit");
  add_grid_flags(s2, mqmmi);
  auto* s3 = app.add_subcommand("sweep-dpi-extra", "DP5 on the Markov reference, DP5..DP7 on the example");
  add_grid_flags(s3, extra);
  auto* v = app.add_subcommand("verify", "Check the proven inequalities on random Markov chains");
  v->add_option("--steps", verify.steps, "Chain length: 4, 6 or 8")->capture_default_str();
  v->add_option("--samples", verify.samples, "Random chains (default 1000/300/100 for 4/6/8)");
  v->add_option("--seed", verify.seed, "Base seed")->capture_default_str();
  v->add_option("--channel", verify.channel, "JSON file with Kraus operators to validate and check");
  v->add_option("--output", verify.output, "Output file (default stdout)");
  v->add_option("--format", verify.format, "json or csv")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kUsageError;
  }

  try {
    if (s1->parsed()) return run_sweep("sweep-qmmi", qmmi, nonmarkov_witness_row, out);
    if (s2->parsed()) return run_sweep("sweep-mqmmi", mqmmi, mqmmi_row, out);
    if (s3->parsed()) return run_sweep("sweep-dpi-extra", extra, extra_dpi_row, out);
    if (v->parsed()) return run_verify(verify, out, err);
  } catch (const ChannelValidationError& e) {
    err << "error: invalid channel: " << e.what() << "\n";
    return kUsageError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace qmono::cli

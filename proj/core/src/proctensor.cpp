#include "qmonogamy/proctensor.hpp"

#include <algorithm>
#include <cmath>

namespace qmono {

namespace {

// Pure state over named registers, big-endian in insertion order.
class Registers {
public:
  Registers(ComplexVector psi, std::vector<Index> dims, std::vector<std::string> labels)
      : psi_(std::move(psi)), dims_(std::move(dims)), labels_(std::move(labels)) {}

  Index index(const std::string& label) const {
    const auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw Error("no register named " + label);
    return static_cast<Index>(it - labels_.begin());
  }

  DimSignature signature() const { return DimSignature(dims_); }
  const ComplexVector& psi() const { return psi_; }

  void relabel(const std::string& from, std::string to) { labels_[index(from)] = std::move(to); }

  void append(const ComplexVector& v, const std::vector<Index>& dims,
              const std::vector<std::string>& labels) {
    if (static_cast<Index>(psi_.size() * v.size()) > kMaxAmplitudes)
      throw DimensionError("circuit state exceeds the amplitude budget");
    psi_ = kron(psi_, v);
    dims_.insert(dims_.end(), dims.begin(), dims.end());
    labels_.insert(labels_.end(), labels.begin(), labels.end());
  }

  void apply(const ComplexMatrix& op, const std::vector<std::string>& targets) {
    std::vector<Index> idx;
    for (const auto& t : targets) idx.push_back(index(t));
    psi_ = apply_local(psi_, signature(), idx, op);
  }

  Subsystems indices(const std::vector<std::string>& labels) const {
    Subsystems out;
    for (const auto& l : labels) out.push_back(index(l));
    std::sort(out.begin(), out.end());
    return out;
  }

private:
  ComplexVector psi_;
  std::vector<Index> dims_;
  std::vector<std::string> labels_;
};

std::string label(char kind, Index i) { return std::string(1, kind) + std::to_string(i); }

Registers circuit_registers(const SystemEnvCircuit& c) {
  return Registers(c.initial.amplitudes(), {c.d_r0, c.d_s, c.d_e}, {"R0", "S", "E"});
}

DimSignature port_signature(const std::vector<Port>& ports) {
  std::vector<Index> dims;
  for (const auto& p : ports) dims.push_back(p.dim);
  return DimSignature(std::move(dims));
}

Index find_port(const std::vector<Port>& ports, const std::string& name) {
  for (Index i = 0; i < ports.size(); ++i)
    if (ports[i].label == name) return i;
  throw DimensionError("process tensor has no port " + name);
}

// Contract slot j (ports S_j, R_j) with the CP map `a`, rescaled by d_{R_j}
// to undo the normalization of the inserted Ψ+.
void contract_slot(ComplexMatrix& m, std::vector<Port>& ports, Index j, const KrausMap& a) {
  const Index s = find_port(ports, label('S', j));
  const Index r = find_port(ports, label('R', j));
  if (a.d_in() != ports[s].dim || a.d_out() != ports[r].dim)
    throw DimensionError("intervention at slot " + std::to_string(j) + " does not match its ports");
  const ComplexMatrix x = choi_matrix(a).transpose();
  const std::vector<Index> targets{s, r};
  m = static_cast<double>(ports[r].dim) * contract_subsystems(m, port_signature(ports), targets, x);
  ports.erase(ports.begin() + static_cast<std::ptrdiff_t>(std::max(s, r)));
  ports.erase(ports.begin() + static_cast<std::ptrdiff_t>(std::min(s, r)));
}

ComplexMatrix keep_ports(const ComplexMatrix& m, const std::vector<Port>& ports,
                         const std::vector<std::string>& names) {
  std::vector<Index> keep;
  for (const auto& n : names) keep.push_back(find_port(ports, n));
  std::sort(keep.begin(), keep.end());
  return partial_trace(m, port_signature(ports), keep);
}

}  // namespace

void SystemEnvCircuit::validate() const {
  if (initial.signature() != DimSignature{d_r0, d_s, d_e})
    throw DimensionError("SystemEnvCircuit: initial state must be over R0 ⊗ S ⊗ E");
  for (const auto& u : step_unitaries) {
    if (static_cast<Index>(u.rows()) != d_s * d_e || static_cast<Index>(u.cols()) != d_s * d_e)
      throw DimensionError("SystemEnvCircuit: step unitary does not act on S ⊗ E");
    if (!is_unitary(u, kChannelTolerance))
      throw ChannelValidationError("SystemEnvCircuit: step operator is not unitary",
                                   max_abs_diff(u.adjoint() * u, ComplexMatrix::Identity(u.rows(), u.cols())));
  }
}

SystemEnvCircuit make_circuit(PureState initial, std::vector<ComplexMatrix> step_unitaries) {
  const auto& sig = initial.signature();
  if (sig.count() != 3) throw DimensionError("make_circuit: initial state must be over R0 ⊗ S ⊗ E");
  const Index d_r0 = sig.dim(0), d_s = sig.dim(1), d_e = sig.dim(2);
  SystemEnvCircuit c{std::move(initial), std::move(step_unitaries), d_r0, d_s, d_e};
  c.validate();
  return c;
}

SystemEnvCircuit markov_circuit(const PureState& initial,
                                const std::vector<StinespringDilation>& steps) {
  if (initial.signature().count() != 2)
    throw DimensionError("markov_circuit: initial state must be over R0 ⊗ S");
  if (steps.empty()) throw DimensionError("markov_circuit: need at least one step");
  const Index d_s = initial.signature().dim(1);
  std::vector<Index> env_dims{d_s};
  ComplexVector env = ComplexVector::Ones(1);
  for (const auto& d : steps) {
    d.validate();
    if (d.d_in != d_s || d.d_out != d_s || d.d_ancilla != d.d_env)
      throw DimensionError("markov_circuit: each step must map S ⊗ F to S ⊗ E with E ≅ F");
    env = kron(env, d.ancilla);
    env_dims.push_back(d.d_ancilla);
  }
  const DimSignature sig(env_dims);
  std::vector<ComplexMatrix> unitaries;
  for (Index i = 0; i < steps.size(); ++i) {
    const std::vector<Index> targets{0, i + 1};
    unitaries.push_back(embed(steps[i].unitary, sig, targets));
  }
  const Index d_e = sig.total() / d_s;
  PureState full(kron(initial.amplitudes(), env),
                 DimSignature{initial.signature().dim(0), d_s, d_e});
  return make_circuit(std::move(full), std::move(unitaries));
}

MarkovChainProcess induced_chain(const PureState& initial,
                                 const std::vector<StinespringDilation>& steps) {
  std::vector<KrausChannel> channels;
  for (const auto& d : steps) channels.push_back(dilation_to_kraus(d));
  MarkovChainProcess p{initial.reduced({1}), std::move(channels)};
  p.validate();
  return p;
}

Index ProcessTensor::port_index(const std::string& name) const { return find_port(ports, name); }

void Instrument::validate() const {
  if (elements.empty()) throw Error("Instrument: no elements");
  const Index d = elements.front().d_in();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& e : elements) {
    if (e.d_in() != d) throw DimensionError("Instrument: elements differ in input dimension");
    for (const auto& k : e.ops()) sum.noalias() += k.adjoint() * k;
  }
  const double dev = max_abs_diff(sum, ComplexMatrix::Identity(d, d));
  if (dev > kChannelTolerance) throw ChannelValidationError("Instrument: elements do not sum to a channel", dev);
}

Instrument computational_basis_instrument(Index d) {
  Instrument inst;
  for (Index a = 0; a < d; ++a) {
    ComplexMatrix p = ComplexMatrix::Zero(d, d);
    p(a, a) = 1.0;
    inst.elements.emplace_back(std::vector<ComplexMatrix>{p});
  }
  return inst;
}

ProcessTensor build_process_tensor(const SystemEnvCircuit& c, Index k) {
  c.validate();
  if (k < 1 || k > c.step_unitaries.size() + 1)
    throw DimensionError("build_process_tensor: need 1 <= k <= number of steps + 1");
  if (c.initial.dim() > kMaxAmplitudes)
    throw DimensionError("build_process_tensor: circuit state exceeds the amplitude budget");

  Registers reg = circuit_registers(c);
  const ComplexVector phi = maximally_entangled(c.d_s).amplitudes();
  std::vector<Port> ports{{"R0", c.d_r0}};
  for (Index j = 1; j < k; ++j) {
    reg.relabel("S", label('S', j));
    reg.append(phi, {c.d_s, c.d_s}, {label('R', j), "S"});
    reg.apply(c.step_unitaries[j - 1], {"S", "E"});
    ports.push_back({label('S', j), c.d_s});
    ports.push_back({label('R', j), c.d_s});
  }
  reg.relabel("S", label('S', k));
  ports.push_back({label('S', k), c.d_s});

  // Bring the ports into port order, environment last, then trace it.
  std::vector<Index> order;
  for (const auto& p : ports) order.push_back(reg.index(p.label));
  order.push_back(reg.index("E"));
  const ComplexVector psi = permute_subsystems(reg.psi(), reg.signature(), order);
  std::vector<Index> dims;
  for (const auto& p : ports) dims.push_back(p.dim);
  dims.push_back(c.d_e);
  std::vector<Index> keep(ports.size());
  for (Index i = 0; i < keep.size(); ++i) keep[i] = i;
  const ComplexMatrix choi = reduced_density(psi, DimSignature(dims), keep);
  return ProcessTensor{validate_density(choi, port_signature(ports)), std::move(ports)};
}

ComplexMatrix contract_open(const ProcessTensor& pt, const std::vector<KrausMap>& maps) {
  const Index k = pt.slots();
  if (maps.size() != k - 1)
    throw DimensionError("contract_open: need one intervention per slot before the last");
  ComplexMatrix m = pt.choi.matrix();
  std::vector<Port> ports = pt.ports;
  for (Index j = 1; j < k; ++j) contract_slot(m, ports, j, maps[j - 1]);
  return keep_ports(m, ports, {label('S', k)});
}

double contract(const ProcessTensor& pt, const std::vector<KrausMap>& maps) {
  const Index k = pt.slots();
  if (maps.size() == k - 1) return contract_open(pt, maps).trace().real();
  if (maps.size() != k) throw DimensionError("contract: need k-1 or k interventions");
  const std::vector<KrausMap> head(maps.begin(), maps.end() - 1);
  const ComplexMatrix out = contract_open(pt, head);
  if (maps.back().d_in() != static_cast<Index>(out.rows()))
    throw DimensionError("contract: final intervention does not match S_k");
  return maps.back()(out).trace().real();
}

ComplexMatrix simulate_circuit(const SystemEnvCircuit& c, const std::vector<KrausMap>& maps) {
  c.validate();
  if (maps.size() > c.step_unitaries.size())
    throw DimensionError("simulate_circuit: more interventions than circuit steps");
  const DimSignature sig{c.d_r0, c.d_s, c.d_e};
  const std::vector<Index> se{1, 2};
  ComplexMatrix rho = c.initial.amplitudes() * c.initial.amplitudes().adjoint();
  for (Index j = 0; j < maps.size(); ++j) {
    if (maps[j].d_in() != c.d_s || maps[j].d_out() != c.d_s)
      throw DimensionError("simulate_circuit: interventions must map S to S");
    rho = apply_to_subsystem(maps[j], rho, sig, 1);
    const ComplexMatrix u = embed(c.step_unitaries[j], sig, se);
    rho = u * rho * u.adjoint();
  }
  return partial_trace(rho, sig, {1});
}

double markov_factorization_gap(const ProcessTensor& pt) {
  const Index k = pt.slots();
  if (k <= 1) return 0.0;
  const DimSignature sig = port_signature(pt.ports);
  ComplexMatrix product = ComplexMatrix::Ones(1, 1);
  for (Index i = 0; i < k; ++i) {
    const std::vector<Index> group{2 * i, 2 * i + 1};
    product = kron(product, partial_trace(pt.choi.matrix(), sig, group));
  }
  return max_abs_diff(pt.choi.matrix(), product);
}

double port_mutual_information(const ProcessTensor& pt, Index y, Index x) {
  const Index r = pt.port_index(label('R', y));
  const Index s = pt.port_index(label('S', x));
  return mutual_information(pt.choi, {r}, {s});
}

double causality_violation(const ProcessTensor& pt) {
  const Index k = pt.slots();
  double worst = 0.0;
  for (Index x = 1; x <= k; ++x)
    for (Index y = x; y < k; ++y) worst = std::max(worst, port_mutual_information(pt, y, x));
  return worst;
}

double interventional_mutual_information(const ProcessTensor& pt, Index j, Index k,
                                         const std::vector<KrausChannel>& interventions) {
  if (j < 1 || k > pt.slots() || j >= k)
    throw DimensionError("interventional_mutual_information: need 1 <= j < k <= slots");
  ComplexMatrix m = pt.choi.matrix();
  std::vector<Port> ports = pt.ports;
  for (Index slot = 1; slot < k; ++slot) {
    if (slot == j) continue;
    const Index d = ports[find_port(ports, label('S', slot))].dim;
    const KrausMap a = slot - 1 < interventions.size() ? KrausMap(interventions[slot - 1])
                                                        : KrausMap(identity_channel(d));
    contract_slot(m, ports, slot, a);
  }
  const ComplexMatrix pair = keep_ports(m, ports, {label('R', j), label('S', k)});
  const Index d_r = ports[find_port(ports, label('R', j))].dim;
  const Index d_s = ports[find_port(ports, label('S', k))].dim;
  const DensityMatrix rho = validate_density(pair, DimSignature{d_r, d_s});
  return mutual_information(rho, {0}, {1});
}

WitnessReport choi_dpi_witnesses(const ProcessTensor& pt,
                                 const std::vector<KrausChannel>& interventions) {
  if (pt.slots() != 4) throw DimensionError("choi_dpi_witnesses: need a four-slot process tensor");
  const auto mi = [&](Index j, Index k) {
    return interventional_mutual_information(pt, j, k, interventions);
  };
  const double r1s2 = mi(1, 2), r1s3 = mi(1, 3), r1s4 = mi(1, 4);
  const double r2s3 = mi(2, 3), r2s4 = mi(2, 4), r3s4 = mi(3, 4);
  WitnessReport r;
  r.add("I(R1:S2)-I(R1:S3)", r1s2 - r1s3);
  r.add("I(R1:S3)-I(R1:S4)", r1s3 - r1s4);
  r.add("I(R2:S3)-I(R2:S4)", r2s3 - r2s4);
  r.add("I(R2:S3)-I(R1:S3)", r2s3 - r1s3);
  r.add("I(R3:S4)-I(R2:S4)", r3s4 - r2s4);
  r.add("I(R2:S4)-I(R1:S4)", r2s4 - r1s4);
  r.add("I(R1:S2)-I(R1:S4)", r1s2 - r1s4);
  return r;
}

std::string to_string(MultitimeKind kind) {
  switch (kind) {
    case MultitimeKind::Q1: return "q1";
    case MultitimeKind::Q2: return "q2";
    case MultitimeKind::Q3: return "q3";
  }
  return "unknown";
}

double multitime_coherent_info(const SystemEnvCircuit& c, MultitimeKind kind, Index j, Index k) {
  c.validate();
  if (j < 1 || j >= k) throw DimensionError("multitime_coherent_info: need 1 <= j < k");
  if (k > c.step_unitaries.size() + 1)
    throw DimensionError("multitime_coherent_info: circuit too short for slot k");

  Registers reg = circuit_registers(c);
  for (Index m = 1; m <= k; ++m) {
    if (m == j) {
      reg.relabel("S", "Sj");
      const std::vector<Index> keep{reg.index("Sj")};
      const DensityMatrix rho_j = validate_density(reduced_density(reg.psi(), reg.signature(), keep));
      const Purification p = purify(rho_j);
      reg.append(p.pure.amplitudes(), {c.d_s, c.d_s}, {"Rj", "S"});
    }
    if (m == k) break;
    reg.apply(c.step_unitaries[m - 1], {"S", "E"});
  }

  const auto h = [&](const std::vector<std::string>& labels) {
    return entropy(reg.psi(), reg.signature(), reg.indices(labels));
  };
  const double joint = h({"Sj", "Rj", "S"});
  switch (kind) {
    case MultitimeKind::Q1: return h({"Sj", "Rj"}) - joint;
    case MultitimeKind::Q2: return h({"S"}) - joint;
    case MultitimeKind::Q3: return h({"Sj", "S"}) - joint;
  }
  return 0.0;
}

double mqmmi_witness(const SystemEnvCircuit& c, MultitimeKind kind) {
  return multitime_coherent_info(c, kind, 1, 4) + multitime_coherent_info(c, kind, 2, 3) -
         multitime_coherent_info(c, kind, 1, 3) - multitime_coherent_info(c, kind, 2, 4);
}

}  // namespace qmono

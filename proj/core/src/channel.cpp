#include "qmonogamy/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "detail/random.hpp"

namespace qmono {

namespace {

std::string describe(const std::string& what, double deviation) {
  return what + " (deviation " + std::to_string(deviation) + ")";
}

// Order that moves `target` to the front, the rest keeping their order.
std::vector<Index> front_order(Index count, Index target) {
  std::vector<Index> order{target};
  for (Index i = 0; i < count; ++i)
    if (i != target) order.push_back(i);
  return order;
}

std::vector<Index> inverse(const std::vector<Index>& order) {
  std::vector<Index> inv(order.size());
  for (Index i = 0; i < order.size(); ++i) inv[order[i]] = i;
  return inv;
}

}  // namespace

ChannelValidationError::ChannelValidationError(const std::string& what, double deviation)
    : Error(describe(what, deviation)), deviation_(deviation) {}

KrausMap::KrausMap(std::vector<ComplexMatrix> ops) : ops_(std::move(ops)) {
  if (ops_.empty()) throw DimensionError("KrausMap: no Kraus operators");
  d_out_ = static_cast<Index>(ops_.front().rows());
  d_in_ = static_cast<Index>(ops_.front().cols());
  if (d_in_ == 0 || d_out_ == 0) throw DimensionError("KrausMap: empty Kraus operator");
  for (const auto& k : ops_) {
    if (static_cast<Index>(k.rows()) != d_out_ || static_cast<Index>(k.cols()) != d_in_)
      throw DimensionError("KrausMap: Kraus operators differ in shape");
    if (!all_finite(k)) throw Error("KrausMap: non-finite Kraus entries");
  }
}

ComplexMatrix KrausMap::operator()(const ComplexMatrix& x) const {
  if (static_cast<Index>(x.rows()) != d_in_ || static_cast<Index>(x.cols()) != d_in_)
    throw DimensionError("KrausMap: input has wrong dimension");
  ComplexMatrix out = ComplexMatrix::Zero(d_out_, d_out_);
  for (const auto& k : ops_) out.noalias() += k * x * k.adjoint();
  return out;
}

double KrausMap::trace_preservation_defect() const {
  ComplexMatrix s = ComplexMatrix::Zero(d_in_, d_in_);
  for (const auto& k : ops_) s.noalias() += k.adjoint() * k;
  return max_abs_diff(s, ComplexMatrix::Identity(d_in_, d_in_));
}

double KrausMap::unitality_defect() const {
  if (d_in_ != d_out_) throw DimensionError("unitality_defect: map is not square");
  ComplexMatrix s = ComplexMatrix::Zero(d_out_, d_out_);
  for (const auto& k : ops_) s.noalias() += k * k.adjoint();
  return max_abs_diff(s, ComplexMatrix::Identity(d_out_, d_out_));
}

KrausMap KrausMap::adjoint() const {
  std::vector<ComplexMatrix> ops;
  ops.reserve(ops_.size());
  for (const auto& k : ops_) ops.push_back(k.adjoint());
  return KrausMap(std::move(ops));
}

KrausChannel::KrausChannel(std::vector<ComplexMatrix> ops) : KrausChannel(KrausMap(std::move(ops))) {}

KrausChannel::KrausChannel(KrausMap map) : KrausMap(std::move(map)) {
  const double dev = trace_preservation_defect();
  if (!(dev <= kChannelTolerance))
    throw ChannelValidationError("Kraus operators are not trace preserving", dev);
}

void StinespringDilation::validate() const {
  const Index rows = d_out * d_env;
  const Index cols = d_in * d_ancilla;
  if (rows != cols || static_cast<Index>(unitary.rows()) != rows ||
      static_cast<Index>(unitary.cols()) != cols)
    throw DimensionError("StinespringDilation: unitary shape does not match d_in·d_F = d_out·d_E");
  if (static_cast<Index>(ancilla.size()) != d_ancilla)
    throw DimensionError("StinespringDilation: ancilla has wrong dimension");
  const double norm_dev = std::abs(ancilla.norm() - 1.0);
  if (norm_dev > kNormTolerance)
    throw ChannelValidationError("StinespringDilation: ancilla not normalized", norm_dev);
  if (!is_unitary(unitary, kChannelTolerance))
    throw ChannelValidationError(
        "StinespringDilation: operator is not unitary",
        max_abs_diff(unitary.adjoint() * unitary, ComplexMatrix::Identity(rows, rows)));
}

StinespringDilation make_dilation(ComplexMatrix unitary, ComplexVector ancilla, Index d_in,
                                  Index d_out) {
  StinespringDilation dil;
  dil.d_in = d_in;
  dil.d_out = d_out;
  dil.d_ancilla = static_cast<Index>(ancilla.size());
  if (d_in == 0 || d_out == 0 || dil.d_ancilla == 0)
    throw DimensionError("make_dilation: zero dimension");
  const Index n = static_cast<Index>(unitary.rows());
  if (n % d_out != 0) throw DimensionError("make_dilation: d_out does not divide the unitary size");
  dil.d_env = n / d_out;
  dil.unitary = std::move(unitary);
  dil.ancilla = std::move(ancilla);
  dil.validate();
  return dil;
}

KrausChannel identity_channel(Index d) {
  return KrausChannel({ComplexMatrix::Identity(d, d)});
}

KrausChannel unitary_channel(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) throw DimensionError("unitary_channel: matrix is not square");
  return KrausChannel({u});
}

KrausChannel depolarizing_channel(Index d) {
  std::vector<ComplexMatrix> ops;
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      ComplexMatrix k = ComplexMatrix::Zero(d, d);
      k(i, j) = amp;
      ops.push_back(std::move(k));
    }
  return KrausChannel(std::move(ops));
}

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho) {
  if (rho.dim() != ch.d_in()) throw DimensionError("apply: state dimension differs from channel input");
  ComplexMatrix out = ch(rho.matrix());
  if (ch.d_out() == ch.d_in()) return validate_density(std::move(out), rho.signature());
  return validate_density(std::move(out), DimSignature{ch.d_out()});
}

ComplexMatrix apply_to_subsystem(const KrausMap& map, const ComplexMatrix& m,
                                 const DimSignature& sig, Index target) {
  if (target >= sig.count()) throw DimensionError("apply_to_subsystem: target out of range");
  if (sig.dim(target) != map.d_in())
    throw DimensionError("apply_to_subsystem: subsystem dimension differs from map input");
  sig.require_total(static_cast<Index>(m.rows()), "apply_to_subsystem");

  const Index rest = sig.total() / map.d_in();
  if (rest == 1) return map(m);

  const auto order = front_order(sig.count(), target);
  const ComplexMatrix front = permute_subsystems(m, sig, order);
  const ComplexMatrix id = ComplexMatrix::Identity(rest, rest);
  ComplexMatrix out = ComplexMatrix::Zero(map.d_out() * rest, map.d_out() * rest);
  for (const auto& k : map.ops()) {
    const ComplexMatrix big = kron(k, id);
    out.noalias() += big * front * big.adjoint();
  }

  std::vector<Index> dims = sig.select(order).dims();
  dims.front() = map.d_out();
  return permute_subsystems(out, DimSignature(dims), inverse(order));
}

DensityMatrix apply_to_subsystem(const KrausChannel& ch, const DensityMatrix& rho, Index target) {
  ComplexMatrix out = apply_to_subsystem(static_cast<const KrausMap&>(ch), rho.matrix(),
                                         rho.signature(), target);
  std::vector<Index> dims = rho.signature().dims();
  dims[target] = ch.d_out();
  return validate_density(std::move(out), DimSignature(dims));
}

KrausChannel compose(const KrausChannel& later, const KrausChannel& earlier) {
  if (later.d_in() != earlier.d_out())
    throw DimensionError("compose: output of the earlier channel does not feed the later one");
  std::vector<ComplexMatrix> ops;
  ops.reserve(later.ops().size() * earlier.ops().size());
  for (const auto& l : later.ops())
    for (const auto& k : earlier.ops()) ops.push_back(l * k);
  return KrausChannel(std::move(ops));
}

KrausChannel dilation_to_kraus(const StinespringDilation& dil) {
  dil.validate();
  // V = U (1 ⊗ |φ>) : S_in -> S_out ⊗ E, then K_e = (1 ⊗ <e|) V.
  ComplexMatrix iso = ComplexMatrix::Zero(dil.d_in * dil.d_ancilla, dil.d_in);
  for (Index c = 0; c < dil.d_in; ++c)
    for (Index f = 0; f < dil.d_ancilla; ++f) iso(c * dil.d_ancilla + f, c) = dil.ancilla(f);
  const ComplexMatrix v = dil.unitary * iso;

  std::vector<ComplexMatrix> ops;
  for (Index e = 0; e < dil.d_env; ++e) {
    ComplexMatrix k(dil.d_out, dil.d_in);
    for (Index a = 0; a < dil.d_out; ++a) k.row(a) = v.row(a * dil.d_env + e);
    if (max_abs(k) > 0.0) ops.push_back(std::move(k));
  }
  if (ops.empty()) ops.push_back(ComplexMatrix::Zero(dil.d_out, dil.d_in));
  return KrausChannel(std::move(ops));
}

DensityMatrix apply_dilation(const StinespringDilation& dil, const DensityMatrix& rho) {
  dil.validate();
  if (rho.dim() != dil.d_in) throw DimensionError("apply_dilation: state dimension differs from d_in");
  const ComplexMatrix anc = dil.ancilla * dil.ancilla.adjoint();
  const ComplexMatrix joint = dil.unitary * kron(rho.matrix(), anc) * dil.unitary.adjoint();
  DimSignature out_sig = dil.d_out == rho.dim() ? rho.signature() : DimSignature{dil.d_out};
  if (dil.d_env == 1) return validate_density(joint, std::move(out_sig));
  return validate_density(partial_trace(joint, DimSignature{dil.d_out, dil.d_env}, {0}),
                          std::move(out_sig));
}

ComplexMatrix choi_matrix(const KrausMap& map) {
  const Index din = map.d_in();
  const Index dout = map.d_out();
  ComplexMatrix j = ComplexMatrix::Zero(din * dout, din * dout);
  for (Index a = 0; a < din; ++a)
    for (Index b = 0; b < din; ++b) {
      ComplexMatrix e = ComplexMatrix::Zero(din, din);
      e(a, b) = 1.0;
      j.block(a * dout, b * dout, dout, dout) = map(e);
    }
  return j;
}

ChoiState choi_of(const KrausChannel& ch) {
  const Index din = ch.d_in();
  const Index dout = ch.d_out();
  ComplexMatrix c = choi_matrix(ch) / static_cast<double>(din);
  return ChoiState{validate_density(std::move(c), DimSignature{din, dout}), din, dout};
}

KrausMap choi_matrix_to_kraus(const ComplexMatrix& choi, Index d_in, Index d_out) {
  if (static_cast<Index>(choi.rows()) != d_in * d_out)
    throw DimensionError("choi_matrix_to_kraus: Choi matrix has wrong dimension");
  const auto spec = hermitian_eig(choi);
  std::vector<ComplexMatrix> ops;
  for (Index i = 0; i < static_cast<Index>(spec.eigenvalues.size()); ++i) {
    const double lam = spec.eigenvalues(i);
    if (lam < 1e-12) continue;
    const double s = std::sqrt(lam);
    ComplexMatrix k(d_out, d_in);
    for (Index c = 0; c < d_in; ++c)
      for (Index a = 0; a < d_out; ++a) k(a, c) = s * spec.eigenvectors(c * d_out + a, i);
    ops.push_back(std::move(k));
  }
  if (ops.empty()) ops.push_back(ComplexMatrix::Zero(d_out, d_in));
  return KrausMap(std::move(ops));
}

KrausChannel choi_to_kraus(const ChoiState& choi) {
  return KrausChannel(choi_matrix_to_kraus(choi.unnormalized(), choi.d_in, choi.d_out));
}

KrausMap adjoint_channel(const KrausChannel& ch) { return ch.adjoint(); }

double adjoint_choi_deviation(const KrausMap& a) {
  if (a.d_in() != a.d_out()) throw DimensionError("adjoint_choi_deviation: map is not square");
  const Index d = a.d_in();
  const ComplexMatrix phi = choi_matrix(identity_channel(d));
  const DimSignature sig{d, d};
  const ComplexMatrix left = apply_to_subsystem(a, phi, sig, 0);
  const ComplexMatrix right = apply_to_subsystem(a.adjoint(), phi, sig, 1);
  return max_abs_diff(left, right.transpose());
}

ComplexMatrix random_unitary(Index d, std::uint64_t seed) {
  auto rng = detail::make_rng(seed);
  return detail::haar_unitary(d, rng);
}

StinespringDilation random_channel(Index d_in, Index d_out, Index d_env, std::uint64_t seed) {
  if (d_in == 0 || d_out == 0 || d_env == 0) throw DimensionError("random_channel: zero dimension");
  const Index n = d_out * d_env;
  if (n % d_in != 0)
    throw DimensionError("random_channel: no ancilla dimension with d_in·d_F = d_out·d_E");
  const Index d_f = n / d_in;
  ComplexVector anc = ComplexVector::Zero(d_f);
  anc(0) = 1.0;
  return make_dilation(random_unitary(n, seed), std::move(anc), d_in, d_out);
}

DimSignature PortOperator::signature() const {
  std::vector<Index> dims;
  dims.reserve(ports.size());
  for (const auto& p : ports) dims.push_back(p.dim);
  return DimSignature(std::move(dims));
}

PortOperator choi_port_operator(const KrausMap& map, std::string in_label, std::string out_label) {
  return PortOperator{choi_matrix(map),
                      {Port{std::move(in_label), map.d_in()}, Port{std::move(out_label), map.d_out()}}};
}

PortOperator link_product(const PortOperator& a, const PortOperator& b) {
  const auto find = [](const std::vector<Port>& ports, const std::string& label) -> std::ptrdiff_t {
    for (Index i = 0; i < ports.size(); ++i)
      if (ports[i].label == label) return static_cast<std::ptrdiff_t>(i);
    return -1;
  };

  std::vector<Index> a_only, a_shared, b_shared, b_only;
  for (Index i = 0; i < a.ports.size(); ++i) {
    const auto j = find(b.ports, a.ports[i].label);
    if (j < 0) {
      a_only.push_back(i);
    } else {
      if (b.ports[j].dim != a.ports[i].dim)
        throw DimensionError("link_product: shared port '" + a.ports[i].label + "' differs in dimension");
      a_shared.push_back(i);
      b_shared.push_back(static_cast<Index>(j));
    }
  }
  for (Index i = 0; i < b.ports.size(); ++i)
    if (find(a.ports, b.ports[i].label) < 0) b_only.push_back(i);

  std::vector<Port> ports;
  for (Index i : a_only) ports.push_back(a.ports[i]);
  for (Index i : b_only) ports.push_back(b.ports[i]);

  if (a_shared.empty()) return PortOperator{kron(a.op, b.op), std::move(ports)};

  const DimSignature sa = a.signature();
  const DimSignature sb = b.signature();
  sa.require_total(static_cast<Index>(a.op.rows()), "link_product");
  sb.require_total(static_cast<Index>(b.op.rows()), "link_product");

  std::vector<Index> a_order = a_only;
  a_order.insert(a_order.end(), a_shared.begin(), a_shared.end());
  std::vector<Index> b_order = b_shared;
  b_order.insert(b_order.end(), b_only.begin(), b_only.end());
  const ComplexMatrix ap = permute_subsystems(a.op, sa, a_order);
  const ComplexMatrix bp = permute_subsystems(b.op, sb, b_order);

  const Index dx = sa.total_of(a_only);
  const Index ds = sa.total_of(a_shared);
  const Index dy = sb.total_of(b_only);

  // R[(x,y),(x',y')] = sum_{s,s'} A[(x,s'),(x',s)] B[(s',y),(s,y')]
  ComplexMatrix r = ComplexMatrix::Zero(dx * dy, dx * dy);
  for (Index x = 0; x < dx; ++x)
    for (Index x2 = 0; x2 < dx; ++x2)
      for (Index s = 0; s < ds; ++s)
        for (Index s2 = 0; s2 < ds; ++s2) {
          const Complex av = ap(x * ds + s2, x2 * ds + s);
          if (av == Complex(0.0)) continue;
          r.block(x * dy, x2 * dy, dy, dy) += av * bp.block(s2 * dy, s * dy, dy, dy);
        }
  return PortOperator{std::move(r), std::move(ports)};
}

}  // namespace qmono

#include <cmath>

#include "oracles.hpp"
#include "qmonogamy/experiments.hpp"
#include "test_util.hpp"

using namespace qmono;
using testutil::diag;

namespace {

const ComplexMatrix I2 = ComplexMatrix::Identity(2, 2);

StinespringDilation lambda_dilation(double lambda) {
  return make_dilation(u_lambda(lambda), basis_state(2, 0).amplitudes(), 2, 2);
}

ComplexMatrix swap2() {
  ComplexMatrix s = ComplexMatrix::Zero(4, 4);
  s(0, 0) = s(1, 2) = s(2, 1) = s(3, 3) = 1.0;
  return s;
}

}  // namespace

TEST_SUITE("channel") {

TEST_CASE("apply: identity and depolarizing") {
  const auto rho = random_density(2, 2, 3);
  CHECK_MATRIX_NEAR(apply(identity_channel(2), rho).matrix(), rho.matrix(), 1e-15);
  CHECK_MATRIX_NEAR(apply(depolarizing_channel(2), rho).matrix(), I2 / 2.0, 1e-15);
}

TEST_CASE("apply: dilation-derived channel matches direct Stinespring evaluation") {
  const auto dil = lambda_dilation(0.3);
  const auto rho = validate_density(diag({2.0 / 3, 1.0 / 3}));
  const auto out = apply(dilation_to_kraus(dil), rho);
  CHECK_MATRIX_NEAR(out.matrix(), oracle::dilate(dil, rho.matrix()), 1e-14);
  CHECK_MATRIX_NEAR(apply_dilation(dil, rho).matrix(), out.matrix(), 1e-14);
}

TEST_CASE("apply rejects dimension mismatch") {
  CHECK_THROWS_AS(apply(identity_channel(2), random_density(3, 3, 1)), DimensionError);
}

TEST_CASE("apply_to_subsystem") {
  const auto a = random_density(2, 2, 4), b = random_density(3, 3, 5);
  const auto ab = tensor(a, b);
  CHECK_MATRIX_NEAR(apply_to_subsystem(identity_channel(3), ab, 1).matrix(), ab.matrix(), 1e-15);
  CHECK_MATRIX_NEAR(apply_to_subsystem(depolarizing_channel(3), ab, 1).matrix(),
                    oracle::kron(a.matrix(), ComplexMatrix::Identity(3, 3) / 3.0), 1e-14);

  const auto bell = maximally_entangled(2).density();
  const auto dep = depolarizing_channel(2);
  std::vector<ComplexMatrix> big;
  for (const auto& k : dep.ops()) big.push_back(oracle::kron(I2, k));
  const ComplexMatrix expected = oracle::kraus_sum(big, bell.matrix());
  CHECK_MATRIX_NEAR(expected, ComplexMatrix::Identity(4, 4) / 4.0, 1e-15);
  CHECK_MATRIX_NEAR(apply_to_subsystem(dep, bell, 1).matrix(), expected, 1e-15);
}

TEST_CASE("apply_to_subsystem on a middle factor matches kron-with-identity") {
  const auto rho = validate_density(random_pure_state({2, 3, 2}, 8).density().matrix(), {2, 3, 2});
  const auto ch = dilation_to_kraus(random_channel(3, 3, 2, 17));
  std::vector<ComplexMatrix> big;
  for (const auto& k : ch.ops()) big.push_back(oracle::kron(oracle::kron(I2, k), I2));
  CHECK_MATRIX_NEAR(apply_to_subsystem(ch, rho, 1).matrix(), oracle::kraus_sum(big, rho.matrix()), 1e-13);
}

TEST_CASE("compose") {
  const auto c1 = dilation_to_kraus(random_channel(2, 2, 2, 1));
  const auto c2 = dilation_to_kraus(random_channel(2, 2, 3, 2));
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto rho = random_density(2, 2, 100 + s);
    CHECK_MATRIX_NEAR(apply(compose(identity_channel(2), c1), rho).matrix(), apply(c1, rho).matrix(), 1e-14);
    CHECK_MATRIX_NEAR(apply(compose(depolarizing_channel(2), c1), rho).matrix(), I2 / 2.0, 1e-14);
  }
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto rho = random_density(2, 1 + s % 2, 200 + s);
    CHECK_MATRIX_NEAR(apply(compose(c2, c1), rho).matrix(), apply(c2, apply(c1, rho)).matrix(), 1e-13);
  }
  CHECK_THROWS_AS(compose(identity_channel(3), c1), DimensionError);
}

TEST_CASE("compose is associative on states") {
  const auto a = dilation_to_kraus(random_channel(2, 2, 2, 41));
  const auto b = dilation_to_kraus(random_channel(2, 2, 2, 42));
  const auto c = dilation_to_kraus(random_channel(2, 2, 2, 43));
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto rho = random_density(2, 2, s);
    CHECK_MATRIX_NEAR(apply(compose(c, compose(b, a)), rho).matrix(),
                      apply(compose(compose(c, b), a), rho).matrix(), 1e-10);
  }
}

TEST_CASE("dilation_to_kraus edge cases") {
  const auto reset = dilation_to_kraus(make_dilation(swap2(), basis_state(2, 0).amplitudes(), 2, 2));
  for (std::uint64_t s = 0; s < 5; ++s)
    CHECK_MATRIX_NEAR(apply(reset, random_density(2, 2, s)).matrix(), diag({1.0, 0.0}), 1e-15);

  const auto id = dilation_to_kraus(make_dilation(ComplexMatrix::Identity(4, 4), basis_state(2, 0).amplitudes(), 2, 2));
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto rho = random_density(2, 2, s);
    CHECK_MATRIX_NEAR(apply(id, rho).matrix(), rho.matrix(), 1e-15);
  }

  const auto dil = lambda_dilation(0.5);
  const auto ch = dilation_to_kraus(dil);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto rho = random_density(2, 2, 50 + s);
    CHECK_MATRIX_NEAR(apply(ch, rho).matrix(), oracle::dilate(dil, rho.matrix()), 1e-14);
  }
}

TEST_CASE("dilation validation") {
  CHECK_THROWS(make_dilation(testutil::diag({1, 1, 1, 0.5}), basis_state(2, 0).amplitudes(), 2, 2));
}

TEST_CASE("KrausChannel rejects non trace-preserving operators") {
  CHECK_THROWS_AS(KrausChannel({0.5 * I2}), ChannelValidationError);
  try {
    KrausChannel({0.5 * I2});
  } catch (const ChannelValidationError& e) {
    CHECK(std::abs(e.deviation() - 0.75) <= 1e-12);
  }
}

TEST_CASE("choi_of") {
  CHECK_MATRIX_NEAR(choi_of(identity_channel(2)).state.matrix(), maximally_entangled(2).density().matrix(), 1e-15);
  CHECK_MATRIX_NEAR(choi_of(depolarizing_channel(2)).state.matrix(), ComplexMatrix::Identity(4, 4) / 4.0, 1e-15);
  for (double lambda : {0.0, 0.3, 0.7, 1.0}) {
    const auto c = choi_of(dilation_to_kraus(lambda_dilation(lambda)));
    CHECK_MATRIX_NEAR(oracle::partial_trace(c.state.matrix(), {2, 2}, {0}), I2 / 2.0, 1e-14);
  }
}

TEST_CASE("choi round trip agrees with Kraus and Stinespring application") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Index d_in = 2 + seed % 2, d_out = 2, d_env = 2 + seed % 3;
    StinespringDilation dil;
    try {
      dil = random_channel(d_in, d_out, d_env, seed);
    } catch (const DimensionError&) {
      continue;
    }
    const auto ch = dilation_to_kraus(dil);
    const auto c = choi_of(ch);
    CHECK_MATRIX_NEAR(oracle::partial_trace(c.state.matrix(), {d_in, d_out}, {0}),
                      ComplexMatrix::Identity(d_in, d_in) / static_cast<double>(d_in), 1e-10);
    const auto back = choi_to_kraus(c);
    const auto rho = random_density(d_in, d_in, seed + 1000);
    const ComplexMatrix direct = oracle::dilate(dil, rho.matrix());
    CHECK_MATRIX_NEAR(apply(ch, rho).matrix(), direct, 1e-9);
    CHECK_MATRIX_NEAR(apply(back, rho).matrix(), direct, 1e-9);
  }
}

TEST_CASE("adjoint channel") {
  const ComplexMatrix u = random_unitary(3, 5);
  const auto adj = adjoint_channel(unitary_channel(u));
  REQUIRE(adj.ops().size() == 1);
  CHECK_MATRIX_NEAR(adj.ops()[0], u.adjoint(), 1e-15);

  // Depolarizing is self-adjoint: Σ_k K_k^dagger X K_k = tr(X) 1/d for a Pauli-type Kraus set too.
  const auto dep = depolarizing_channel(2);
  const auto dep_adj = adjoint_channel(dep);
  for (std::uint64_t s = 0; s < 5; ++s) {
    const ComplexMatrix x = testutil::random_matrix(2, 2, s);
    CHECK_MATRIX_NEAR(dep_adj(x), dep(x), 1e-14);
  }
}

TEST_CASE("(A ⊗ id)(Phi) = [(id ⊗ A^dagger)(Phi)]^T for random channels") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Index d = 2 + seed % 2;
    const auto ch = dilation_to_kraus(random_channel(d, d, 1 + seed % 3, seed));
    CHECK(adjoint_choi_deviation(ch) <= 1e-12);
    CHECK(adjoint_channel(ch).unitality_defect() <= 1e-10);

    // Independent check through explicit Kraus sums on the unnormalized Φ.
    const ComplexVector phi = std::sqrt(static_cast<double>(d)) * maximally_entangled(d).amplitudes();
    const ComplexMatrix big = phi * phi.adjoint();
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);
    std::vector<ComplexMatrix> left, right;
    for (const auto& k : ch.ops()) {
      left.push_back(oracle::kron(k, id));
      right.push_back(oracle::kron(id, k.adjoint()));
    }
    CHECK_MATRIX_NEAR(oracle::kraus_sum(left, big), oracle::kraus_sum(right, big).transpose(), 1e-12);
  }
}

TEST_CASE("random_channel") {
  const auto a = random_channel(2, 2, 3, 99), b = random_channel(2, 2, 3, 99);
  CHECK(a.unitary == b.unitary);
  CHECK(dilation_to_kraus(a).trace_preservation_defect() <= 1e-10);
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto dil = random_channel(2, 2, 1 + seed % 4, seed);
    CHECK_NOTHROW(validate_density(apply(dilation_to_kraus(dil), validate_density(I2 / 2.0)).matrix()));
  }
  CHECK_THROWS_AS(random_channel(2, 3, 1, 0), DimensionError);
}

TEST_CASE("link product over no shared ports is the tensor product") {
  const PortOperator a{testutil::random_matrix(2, 2, 1), {{"A", 2}}};
  const PortOperator b{testutil::random_matrix(3, 3, 2), {{"B", 3}}};
  const auto ab = link_product(a, b);
  CHECK_MATRIX_NEAR(ab.op, oracle::kron(a.op, b.op), 0.0);
  CHECK(ab.ports == std::vector<Port>{{"A", 2}, {"B", 3}});
}

TEST_CASE("link of a state with a channel Choi gives the output state") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto rho = random_density(2, 2, seed);
    const auto ch = dilation_to_kraus(random_channel(2, 3, 2, seed));
    const PortOperator state{rho.matrix(), {{"S", 2}}};
    const auto out = link_product(state, choi_port_operator(ch, "S", "T"));
    REQUIRE(out.ports == std::vector<Port>{{"T", 3}});
    CHECK_MATRIX_NEAR(out.op, apply(ch, rho).matrix(), 1e-13);
  }
}

TEST_CASE("link of two channel Chois is the Choi of the composition") {
  const auto c1 = dilation_to_kraus(random_channel(2, 2, 2, 5));
  const auto c2 = dilation_to_kraus(random_channel(2, 2, 3, 6));
  const auto linked = link_product(choi_port_operator(c1, "A", "B"), choi_port_operator(c2, "B", "C"));
  CHECK_MATRIX_NEAR(linked.op, choi_matrix(compose(c2, c1)), 1e-13);
}

TEST_CASE("link product is associative") {
  const PortOperator a{testutil::random_matrix(4, 4, 1), {{"X", 2}, {"Y", 2}}};
  const PortOperator b{testutil::random_matrix(6, 6, 2), {{"Y", 2}, {"Z", 3}}};
  const PortOperator c{testutil::random_matrix(6, 6, 3), {{"Z", 3}, {"W", 2}}};
  const auto left = link_product(link_product(a, b), c);
  const auto right = link_product(a, link_product(b, c));
  REQUIRE(left.ports == right.ports);
  CHECK_MATRIX_NEAR(left.op, right.op, 1e-12);
}

TEST_CASE("link product rejects mismatched shared dims") {
  const PortOperator a{ComplexMatrix::Identity(2, 2), {{"X", 2}}};
  const PortOperator b{ComplexMatrix::Identity(3, 3), {{"X", 3}}};
  CHECK_THROWS_AS(link_product(a, b), DimensionError);
}

}  // TEST_SUITE

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qrf/comm.hpp"
#include "qrf/core.hpp"
#include "qrf/twirl.hpp"

#include <cmath>

using namespace qrf;
using namespace qrf::comm;

namespace {

DensityOperator random_qubit(Rng& rng) {
  Matrix g(2, 2);
  for (int i = 0; i < 4; ++i) g(i / 2, i % 2) = Complex(rng.normal(), rng.normal());
  Matrix m = g * g.adjoint();
  m /= m.trace();
  return DensityOperator(m, {2});
}

StateVector random_pure_qubit(Rng& rng) {
  Vector v(2);
  v << Complex(rng.normal(), rng.normal()), Complex(rng.normal(), rng.normal());
  v /= v.norm();
  return StateVector(v, {2});
}

}  // namespace

TEST_CASE("dfs_report") {
  DfsReport r3 = dfs_report(3);
  CHECK(r3.best_quantum_j.twice == 1);
  CHECK(r3.best_quantum_dim == 2);
  CHECK(r3.classical_count == 3);

  CHECK(dfs_report(2).classical_count == 2);

  DfsReport r8 = dfs_report(8);
  long long total = 0;
  for (const auto& row : r8.rows) total += row.gauge_dim * row.multiplicity;
  CHECK(total == 256);
}

TEST_CASE("singlet/triplet classical bit") {
  StateVector zero = encode_singlet_triplet_bit(0);
  BitDecode d0 = decode_singlet_triplet_bit(DensityOperator::from_pure(zero));
  CHECK(d0.bit == 0);
  CHECK(d0.p_singlet == doctest::Approx(1.0).epsilon(1e-12));

  StateVector one = encode_singlet_triplet_bit(1);
  DensityOperator sent = twirl::su2_twirl_qubits(DensityOperator::from_pure(one), 2);
  BitDecode d1 = decode_singlet_triplet_bit(sent);
  CHECK(d1.bit == 1);
  CHECK(d1.p_symmetric == doctest::Approx(1.0).epsilon(1e-12));

  BitDecode mixed = decode_singlet_triplet_bit(DensityOperator::maximally_mixed({2, 2}));
  CHECK(mixed.p_singlet == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(mixed.p_symmetric == doctest::Approx(0.75).epsilon(1e-12));

  CHECK_THROWS(encode_singlet_triplet_bit(2));
}

TEST_CASE("three-qubit logical qubit round trips") {
  DensityOperator zero = DensityOperator::from_pure(StateVector::basis(0, {2}));
  DensityOperator back = decode_logical_qubit_3(encode_logical_qubit_3(zero));
  CHECK((back.matrix() - zero.matrix()).cwiseAbs().maxCoeff() < 1e-13);

  Rng rng(31);
  for (int t = 0; t < 20; ++t) {
    DensityOperator logical = random_qubit(rng);
    for (auto gauge : {GaugeMode::mixed, GaugeMode::pure}) {
      DensityOperator enc = encode_logical_qubit_3(logical, gauge);
      DensityOperator sent = twirl::su2_twirl_qubits(enc, 3);
      DensityOperator dec = decode_logical_qubit_3(sent);
      CHECK((dec.matrix() - logical.matrix()).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("logical qubit survives collective rotations mid channel") {
  Rng rng(32);
  for (int t = 0; t < 100; ++t) {
    StateVector psi = random_pure_qubit(rng);
    DensityOperator enc = encode_logical_qubit_3(DensityOperator::from_pure(psi));
    Matrix u = group::Su2Element::haar_sample(rng).collective(3);
    DensityOperator rotated(u * enc.matrix() * u.adjoint(), enc.dims());
    DensityOperator dec = decode_logical_qubit_3(rotated);
    CHECK(fidelity(dec, DensityOperator::from_pure(psi)) > 1.0 - 1e-10);
  }
}

TEST_CASE("decode rejects support outside the code space") {
  const auto& dec = twirl::cached_coupling(3);
  const auto* blk = dec.block(group::HalfInt(3));
  Matrix full = Matrix::Zero(8, 8);
  for (int i = 0; i < 4; ++i) full(blk->offset + i, blk->offset + i) = 0.25;
  DensityOperator stretched(dec.isometry().adjoint() * full * dec.isometry(), {2, 2, 2});
  CHECK_THROWS(decode_logical_qubit_3(stretched));
}

TEST_CASE("tetrahedron states") {
  auto states = tetrahedron_states();
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      Complex ov = states[i].amplitudes().adjoint() * states[k].amplitudes();
      CHECK(std::abs(ov - (i == k ? 1.0 : 0.0)) < 1e-12);
    }
  for (const auto& s : states) {
    DensityOperator t = twirl::su2_twirl_qubits(DensityOperator::from_pure(s), 2);
    CHECK((t.matrix() - Matrix::Identity(4, 4) / 4.0).cwiseAbs().maxCoeff() < 1e-12);
  }
  // tetrahedral single-spin overlap
  Vector n1(2), n2(2);
  n1 << 1, 0;
  n2 << Complex(0, 1 / std::sqrt(3.0)), Complex(0, std::sqrt(2.0 / 3.0));
  CHECK(std::abs(Complex(n1.adjoint() * n2)) == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("eight private states on three qubits") {
  auto states = eight_states_3qubits();
  for (int i = 0; i < 8; ++i)
    for (int k = 0; k < 8; ++k) {
      Complex ov = states[i].amplitudes().adjoint() * states[k].amplitudes();
      CHECK(std::abs(ov - (i == k ? 1.0 : 0.0)) < 1e-12);
    }
  for (const auto& s : states) {
    DensityOperator t = twirl::su2_twirl_qubits(DensityOperator::from_pure(s), 3);
    CHECK((t.matrix() - Matrix::Identity(8, 8) / 8.0).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK(private_capacities(3).quantum_qubits == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("private twirled images are indistinguishable within each family") {
  auto tets = tetrahedron_states();
  Matrix base = twirl::su2_twirl_qubits(DensityOperator::from_pure(tets[0]), 2).matrix();
  for (int i = 1; i < 4; ++i) {
    Matrix t = twirl::su2_twirl_qubits(DensityOperator::from_pure(tets[i]), 2).matrix();
    CHECK((t - base).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("qkd singlet products") {
  QkdStates q = qkd_states();
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      double ov = std::abs(
          Complex(q.four_qubit[a].amplitudes().adjoint() * q.four_qubit[b].amplitudes()));
      CHECK(ov == doctest::Approx(a == b ? 1.0 : 0.5).epsilon(1e-12));
    }

  for (int a = 0; a < 3; ++a) {
    DensityOperator rho = DensityOperator::from_pure(q.four_qubit[a]);
    DensityOperator t = twirl::su2_twirl_qubits(rho, 4);
    CHECK((t.matrix() - rho.matrix()).cwiseAbs().maxCoeff() < 1e-12);
  }

  for (int a = 0; a < 3; ++a) {
    RealVector spec = q.three_qubit[a].spectrum();
    CHECK(spec(0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(spec(1) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(spec(2) < 1e-12);

    // product form (I/2)_M (x) pure_N on the j=1/2 sector
    const auto& dec = twirl::cached_coupling(3);
    const auto* blk = dec.block(group::HalfInt(1));
    Matrix sigma = dec.isometry() * q.three_qubit[a].matrix() * dec.isometry().adjoint();
    CHECK(std::abs(sigma.block(blk->offset, blk->offset, 4, 4).trace().real() - 1.0) < 1e-12);
    // gauge marginal = I/2
    Matrix gauge = Matrix::Zero(2, 2);
    for (int m = 0; m < 2; ++m)
      for (int mp = 0; mp < 2; ++mp) {
        Complex acc = 0;
        for (int lam = 0; lam < 2; ++lam)
          acc += sigma(blk->offset + lam * 2 + m, blk->offset + lam * 2 + mp);
        gauge(m, mp) = acc;
      }
    CHECK((gauge - Matrix::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() < 1e-12);
    // multiplicity marginal pure
    Matrix mult = Matrix::Zero(2, 2);
    for (int lam = 0; lam < 2; ++lam)
      for (int lp = 0; lp < 2; ++lp) {
        Complex acc = 0;
        for (int m = 0; m < 2; ++m)
          acc += sigma(blk->offset + lam * 2 + m, blk->offset + lp * 2 + m);
        mult(lam, lp) = acc;
      }
    CHECK(std::abs((mult * mult).trace().real() - 1.0) < 1e-10);  // purity
  }
}

TEST_CASE("every encoder output survives the twirl") {
  // classical code: outcome certainty 1 (checked above); quantum code fidelity 1
  Rng rng(33);
  for (int t = 0; t < 10; ++t) {
    StateVector psi = random_pure_qubit(rng);
    DensityOperator enc = encode_logical_qubit_3(DensityOperator::from_pure(psi));
    DensityOperator out = decode_logical_qubit_3(twirl::su2_twirl_qubits(enc, 3));
    CHECK(fidelity(out, DensityOperator::from_pure(psi)) > 1.0 - 1e-10);
  }
}

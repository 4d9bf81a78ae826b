#include "qrf/comm.hpp"

#include "qrf/core.hpp"
#include "qrf/twirl.hpp"

#include <cmath>

namespace qrf::comm {

namespace {

constexpr double kPi = 3.14159265358979323846;

Vector ket2(int b) {
  Vector v = Vector::Zero(2);
  v(b) = 1.0;
  return v;
}

Vector singlet() {
  Vector v = Vector::Zero(4);
  v(1) = 1.0 / std::sqrt(2.0);
  v(2) = -1.0 / std::sqrt(2.0);
  return v;
}

Matrix singlet_projector() {
  Vector s = singlet();
  return s * s.adjoint();
}

}  // namespace

DfsReport dfs_report(int n_qubits) {
  if (n_qubits < 1) throw std::invalid_argument("dfs_report: N >= 1");
  DfsReport rep;
  rep.n_qubits = n_qubits;
  rep.classical_count = group::classical_message_count(n_qubits);
  long long best = 0;
  for (int tj = n_qubits; tj >= (n_qubits % 2); tj -= 2) {
    DfsRow row{group::HalfInt(tj), tj + 1, group::multiplicity(n_qubits, group::HalfInt(tj))};
    rep.rows.push_back(row);
    if (row.multiplicity >= best) {  // ties resolved toward smaller j by scan order
      best = row.multiplicity;
      rep.best_quantum_j = row.j;
      rep.best_quantum_dim = best;
    }
  }
  return rep;
}

StateVector encode_singlet_triplet_bit(int b) {
  if (b != 0 && b != 1) throw std::invalid_argument("encode_singlet_triplet_bit: bit must be 0/1");
  if (b == 0) return StateVector(singlet(), {2, 2});
  return StateVector::basis(0, {2, 2});  // |00>
}

BitDecode decode_singlet_triplet_bit(const DensityOperator& rho) {
  if (rho.dim() != 4) throw std::invalid_argument("decode_singlet_triplet_bit: need two qubits");
  Matrix ps = singlet_projector();
  BitDecode out;
  out.p_singlet = (ps * rho.matrix()).trace().real();
  out.p_symmetric = 1.0 - out.p_singlet;
  out.bit = out.p_singlet >= out.p_symmetric ? 0 : 1;
  return out;
}

DensityOperator encode_logical_qubit_3(const DensityOperator& logical, GaugeMode gauge) {
  if (logical.dim() != 2) throw std::invalid_argument("encode_logical_qubit_3: input not a qubit");
  const auto& dec = twirl::cached_coupling(3);
  const auto* blk = dec.block(group::HalfInt(1));
  // coupled-sector index (lambda, m) = lambda*2 + m_index; logical lives on lambda
  Matrix sector;
  if (gauge == GaugeMode::mixed)
    sector = kron(logical.matrix(), Matrix::Identity(2, 2) / 2.0);
  else {
    Matrix g = Matrix::Zero(2, 2);
    g(0, 0) = 1.0;  // gauge ket |m=+1/2>
    sector = kron(logical.matrix(), g);
  }
  Matrix full = Matrix::Zero(8, 8);
  full.block(blk->offset, blk->offset, 4, 4) = sector;
  const Matrix& v = dec.isometry();
  return DensityOperator(v.adjoint() * full * v, {2, 2, 2});
}

DensityOperator decode_logical_qubit_3(const DensityOperator& rho3) {
  if (rho3.dim() != 8) throw std::invalid_argument("decode_logical_qubit_3: need three qubits");
  const auto& dec = twirl::cached_coupling(3);
  const auto* blk = dec.block(group::HalfInt(1));
  const Matrix& v = dec.isometry();
  Matrix sigma = v * rho3.matrix() * v.adjoint();
  Matrix sector = sigma.block(blk->offset, blk->offset, 4, 4);
  double weight = sector.trace().real();
  if (weight < 1.0 - 1e-9)
    throw std::invalid_argument("decode_logical_qubit_3: state outside code space (j=1/2 weight " +
                                std::to_string(weight) + ")");
  // trace out the gauge index m
  Matrix logical = Matrix::Zero(2, 2);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      Complex acc = 0;
      for (int m = 0; m < 2; ++m) acc += sector(a * 2 + m, b * 2 + m);
      logical(a, b) = acc / weight;
    }
  return DensityOperator(std::move(logical), {2});
}

std::array<StateVector, 4> tetrahedron_states() {
  std::array<Vector, 4> n;
  n[0] = ket2(0);
  n[1] = Complex(0, 1) / std::sqrt(3.0) * (ket2(0) + std::sqrt(2.0) * ket2(1)).eval();
  n[2] = Complex(0, -1) / std::sqrt(3.0) *
         (ket2(0) + std::exp(Complex(0, 2 * kPi / 3)) * std::sqrt(2.0) * ket2(1)).eval();
  n[3] = Complex(0, 1) / std::sqrt(3.0) *
         (ket2(0) + std::exp(Complex(0, -2 * kPi / 3)) * std::sqrt(2.0) * ket2(1)).eval();
  std::array<StateVector, 4> out = {StateVector::basis(0, {2, 2}), StateVector::basis(0, {2, 2}),
                                    StateVector::basis(0, {2, 2}), StateVector::basis(0, {2, 2})};
  Vector s = singlet();
  for (int i = 0; i < 4; ++i) {
    Vector v = 0.5 * s + (std::sqrt(3.0) / 2.0) * kron(n[i], n[i]);
    out[i] = StateVector(std::move(v), {2, 2});
  }
  return out;
}

std::array<StateVector, 8> eight_states_3qubits() {
  const auto& dec = twirl::cached_coupling(3);
  const Matrix& v = dec.isometry();
  const auto* b32 = dec.block(group::HalfInt(3));
  const auto* b12 = dec.block(group::HalfInt(1));
  auto coupled_basis = [&](long row) { return Vector(v.adjoint().col(row)); };

  // four orthogonal states on the j=3/2 subspace: the |3/2,m> basis itself
  std::array<Vector, 4> top;
  for (int m = 0; m < 4; ++m) top[m] = coupled_basis(b32->offset + m);

  // four maximally entangled states on M_{1/2} (x) N_{1/2}; index (lambda, m)
  auto half = [&](int lambda, int m) { return coupled_basis(b12->offset + lambda * 2 + m); };
  const double r2 = std::sqrt(2.0);
  std::array<Vector, 4> bell = {(half(0, 0) + half(1, 1)) / r2, (half(0, 0) - half(1, 1)) / r2,
                                (half(0, 1) + half(1, 0)) / r2, (half(0, 1) - half(1, 0)) / r2};

  std::array<StateVector, 8> out = {
      StateVector::basis(0, {2, 2, 2}), StateVector::basis(0, {2, 2, 2}),
      StateVector::basis(0, {2, 2, 2}), StateVector::basis(0, {2, 2, 2}),
      StateVector::basis(0, {2, 2, 2}), StateVector::basis(0, {2, 2, 2}),
      StateVector::basis(0, {2, 2, 2}), StateVector::basis(0, {2, 2, 2})};
  for (int b = 0; b < 2; ++b)
    for (int mu = 0; mu < 4; ++mu) {
      Vector s = (top[mu] + (b == 0 ? 1.0 : -1.0) * bell[mu]) / r2;
      out[b * 4 + mu] = StateVector(std::move(s), {2, 2, 2});
    }
  return out;
}

PrivateCapacities private_capacities(int n_qubits) {
  if (n_qubits < 1) throw std::invalid_argument("private_capacities: N >= 1");
  return {std::log2(double(n_qubits + 1)), 3.0 * std::log2(double(n_qubits))};
}

QkdStates qkd_states() {
  // |Psi_a> = products of singlets on pairings (12)(34), (13)(24), (14)(23)
  std::array<std::array<int, 4>, 3> pairings = {{{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}}};
  QkdStates out{{StateVector::basis(0, {2, 2, 2, 2}), StateVector::basis(0, {2, 2, 2, 2}),
                 StateVector::basis(0, {2, 2, 2, 2})},
                {DensityOperator::maximally_mixed({2}), DensityOperator::maximally_mixed({2}),
                 DensityOperator::maximally_mixed({2})}};
  for (int a = 0; a < 3; ++a) {
    auto [p0, p1, q0, q1] = std::tuple{pairings[a][0], pairings[a][1], pairings[a][2], pairings[a][3]};
    Vector v = Vector::Zero(16);
    // singlet on (p0,p1) times singlet on (q0,q1)
    for (int s1 = 0; s1 < 2; ++s1)
      for (int s2 = 0; s2 < 2; ++s2) {
        int bits[4];
        bits[p0] = s1;
        bits[p1] = 1 - s1;
        bits[q0] = s2;
        bits[q1] = 1 - s2;
        long idx = bits[0] * 8 + bits[1] * 4 + bits[2] * 2 + bits[3];
        double sign = ((s1 == 1) ? -1.0 : 1.0) * ((s2 == 1) ? -1.0 : 1.0);
        v(idx) = sign / 2.0;
      }
    out.four_qubit[a] = StateVector(std::move(v), {2, 2, 2, 2});
    out.three_qubit[a] =
        partial_trace(DensityOperator::from_pure(out.four_qubit[a]), {0, 1, 2});
  }
  return out;
}

}  // namespace qrf::comm

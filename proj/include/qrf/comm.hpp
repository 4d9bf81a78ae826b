/// @file
/// Communication without a shared Cartesian frame: capacity counting,
/// decoherence-free encoders/decoders, private-frame state families and the
/// singlet-product QKD states.
#pragma once

#include "qrf/group.hpp"
#include "qrf/types.hpp"

#include <array>

namespace qrf::comm {

struct DfsRow {
  group::HalfInt j;
  int gauge_dim = 0;
  long long multiplicity = 0;
};

struct DfsReport {
  int n_qubits = 0;
  std::vector<DfsRow> rows;              // j descending
  long long classical_count = 0;         // number of distinguishable classical messages
  group::HalfInt best_quantum_j;         // argmax multiplicity, ties -> smaller j
  long long best_quantum_dim = 0;        // c_{j*}
};

DfsReport dfs_report(int n_qubits);

/// b=0 -> singlet |psi->, b=1 -> |00> (any symmetric state works).
StateVector encode_singlet_triplet_bit(int b);

struct BitDecode {
  int bit = 0;
  double p_singlet = 0;
  double p_symmetric = 0;
};

/// Projective singlet/symmetric discrimination on two qubits.
BitDecode decode_singlet_triplet_bit(const DensityOperator& rho);

enum class GaugeMode { mixed, pure };

/// Encode a logical qubit into the j=1/2 multiplicity subsystem of 3 qubits.
/// The gauge factor is completely mixed by default (pure |m=+1/2> optional).
DensityOperator encode_logical_qubit_3(const DensityOperator& logical,
                                       GaugeMode gauge = GaugeMode::mixed);

/// Recover the logical qubit; throws if the state has weight outside the
/// j=1/2 sector (beyond 1e-9).
DensityOperator decode_logical_qubit_3(const DensityOperator& rho3);

/// Four orthogonal two-qubit states |i> = 1/2 |psi-> + sqrt(3)/2 |n_i n_i>,
/// with the n_i forming a tetrahedron on the Bloch sphere.
std::array<StateVector, 4> tetrahedron_states();

/// Eight orthogonal 3-qubit states, all mapped to I/8 by the collective twirl.
std::array<StateVector, 8> eight_states_3qubits();

struct PrivateCapacities {
  double quantum_qubits = 0;             // log2(N+1)
  double classical_bits_asymptotic = 0;  // 3 log2 N
};

PrivateCapacities private_capacities(int n_qubits);

struct QkdStates {
  std::array<StateVector, 3> four_qubit;      // singlet products |Psi_a>
  std::array<DensityOperator, 3> three_qubit; // Tr_4 |Psi_a><Psi_a|
};

QkdStates qkd_states();

}  // namespace qrf::comm

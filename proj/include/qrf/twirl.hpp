/// @file
/// Superselection-induced decoherence: G-twirling superoperators for U(1)
/// and collective SU(2), weighted twirling, super-twirling of channels and
/// G-invariance tests.
#pragma once

#include "qrf/group.hpp"
#include "qrf/types.hpp"

#include <functional>

namespace qrf::twirl {

/// Pinch over total-number eigenspaces: rho -> sum_n Pi_n rho Pi_n.
/// `number_spectrum` lists the integer eigenvalue of each basis state.
DensityOperator u1_twirl(const DensityOperator& rho, const std::vector<int>& number_spectrum);

/// Collective SU(2) twirl on N qubits, computed exactly in the coupled basis:
/// project to each j block, depolarize the gauge factor, keep the multiplicity factor.
DensityOperator su2_twirl_qubits(const DensityOperator& rho, int n_qubits);

/// Same, applied to a matrix in the coupled basis of `dec` (no basis change).
Matrix block_twirl_coupled(const Matrix& sigma, const group::IrrepDecomposition& dec);

/// Shared, cached decomposition for N qubits.
const group::IrrepDecomposition& cached_coupling(int n_qubits);

struct SampledTwirl {
  DensityOperator state;
  double std_error = 0;  // Frobenius-norm standard error of the sample mean
};

/// Monte Carlo group average over unitaries drawn by `sample`.
SampledTwirl dense_twirl_via_sampling(const DensityOperator& rho,
                                      const std::function<Matrix(Rng&)>& sample, long n_samples,
                                      std::uint64_t seed);

/// Partially decohering twirl against a phase distribution p on [0,2pi):
/// the (n,n') coherence is scaled by the (n-n')-th Fourier coefficient of p.
DensityOperator weighted_u1_twirl(const DensityOperator& rho,
                                  const std::vector<int>& number_spectrum,
                                  const std::function<double(double)>& phase_density,
                                  int quadrature_nodes = 2048);

/// Super-twirl of a channel under U(1): each Kraus operator splits into its
/// fixed number-shift components (exact Fourier selection rule).
QuantumChannel super_twirl_u1(const QuantumChannel& ch, const std::vector<int>& number_spectrum);

/// Super-twirl over an explicit finite unitary group (exact sum).
QuantumChannel super_twirl_finite(const QuantumChannel& ch, const std::vector<Matrix>& group);

/// Choi matrix sum_k vec(K_k) vec(K_k)^dag; unique for a channel.
Matrix choi_matrix(const QuantumChannel& ch);

/// Max commutator norm ||[A, U]|| over the supplied group elements <= tol.
bool is_g_invariant(const Matrix& op, const std::vector<Matrix>& group, double tol);

/// Channel invariance via Choi matrices of T(g) o E o T(g^-1) against E.
bool is_g_invariant(const QuantumChannel& ch, const std::vector<Matrix>& group, double tol);

/// Representative U(1) phase unitaries exp(i phi N) for invariance checks.
std::vector<Matrix> u1_elements(const std::vector<int>& number_spectrum,
                                const std::vector<double>& phases);

/// Collective SU(2) rotations for invariance checks (deterministic sample).
std::vector<Matrix> su2_collective_elements(int n_qubits, int count, std::uint64_t seed);

}  // namespace qrf::twirl

/// @file
/// Reference-frame alignment as an optimization problem: fiducial covariant
/// POVMs, maximum-likelihood and fidelity-optimal signal states for phase,
/// direction and Cartesian frames, Monte Carlo protocol simulation, and the
/// multi-round bitwise phase-alignment protocol.
#pragma once

#include "qrf/group.hpp"
#include "qrf/types.hpp"

#include <functional>
#include <optional>

namespace qrf::align {

/// Per-sector support of a fiducial construction: the chosen Schmidt rank
/// d_j <= min(dim M_j, dim N_j) and which multiplicity columns carry it.
struct SectorSupport {
  group::HalfInt j;
  int rank = 0;
};

/// Covariant measurement generated by a rank-1 fiducial effect |e><e| whose
/// group orbit resolves the identity on the support subspace.
struct CovariantMeasurement {
  Vector fiducial;                     // |e> in the computational basis
  std::vector<SectorSupport> support;  // per charge sector
};

/// |e> = sum_j sqrt(2j+1) sum_m |j,m> (x) |r_m>, paired across the first
/// d_j multiplicity columns of each sector of `dec`.
CovariantMeasurement fiducial_povm(const group::IrrepDecomposition& dec,
                                   const std::vector<SectorSupport>* support_override = nullptr);

/// ||G[|e><e|] - Pi_support||_max; zero for a valid covariant POVM.
double covariant_completeness_error(const CovariantMeasurement& m,
                                    const group::IrrepDecomposition& dec);

struct MaxLikelihoodResult {
  Vector state;        // optimal fiducial signal state e/||e||
  double mu_max = 0;   // sum_j dim(M_j) min(dim M_j, dim N_j)
};

MaxLikelihoodResult max_likelihood_optimum(const group::IrrepDecomposition& dec);

/// Phase frame with at most n_max photons: mu_max = n_max+1, flat state.
MaxLikelihoodResult max_likelihood_optimum_phase(int n_max);

struct DirectionMaxLikelihoodResult {
  RealVector b;       // SO(2)-invariant signal over |j,0>, j = 0..N/2
  double mu_max = 0;  // (N/2+1)^2
};

/// Maximum likelihood for a direction (coset) frame on N qubits; the signal
/// is rotation-invariant about z, so only one m=0 column per j contributes.
DirectionMaxLikelihoodResult direction_max_likelihood(int n_qubits);

struct PhaseFidelityResult {
  RealVector coefficients;      // optimal amplitudes over n = 0..N
  double f_bar = 0;             // top eigenvalue of the payoff matrix
  double f_closed_form = 0;     // (1 + cos(pi/(N+2)))/2
};

/// Fidelity-optimal phase-alignment state via the tridiagonal eigenproblem.
PhaseFidelityResult phase_fidelity_optimum(int n_max);

struct DirectionFidelityResult {
  RealVector b;                 // coefficients over |j,0>, j = 0..N/2
  double f_bar = 0;
  double f_closed_form = 0;     // (1 + largest zero of P_{N/2+1})/2
};

DirectionFidelityResult direction_fidelity_optimum(int n_qubits);

struct CartesianFidelityResult {
  RealVector beta;              // j = 0..N/2; last entry = stretched sector
  double f_bar = 0;
  double heisenberg_ratio = 0;  // (1 - f_bar) N^2 / pi^2
  RealMatrix payoff_matrix;
};

/// Finite-N Cartesian-frame optimum over Bell-entangled sector states plus
/// the one-dimensional stretched sector; matrix constants fixed by explicit
/// character and Haar quadrature rather than the large-N limit.
CartesianFidelityResult cartesian_fidelity_optimum(int n_qubits);

/// Average fidelity of the two-spin parallel scheme (symmetric-subspace
/// covariant POVM), by quadrature; equals 3/4.
double two_spin_parallel_fidelity();

/// Average fidelity of the two-spin antiparallel scheme, by quadrature;
/// equals (1+sqrt(3))/(2 sqrt(3)).
double two_spin_antiparallel_fidelity();

/// Monte Carlo record of a simulated estimation protocol.
struct EstimationRun {
  long trials = 0;
  std::uint64_t seed = 0;
  std::vector<double> payoffs;
  double mean = 0;
  double std_error = 0;  // sample stdev / sqrt(trials)
};

/// Phase alignment: signal coefficients psi_n against the flat fiducial
/// effect; guesses sampled by inverse CDF of |<e|U(theta)|psi>|^2 on a
/// 4096-node table; payoff is a function of the relative angle.
EstimationRun simulate_phase_alignment(const RealVector& psi,
                                       const std::function<double(double)>& payoff, long trials,
                                       std::uint64_t seed, int table_nodes = 4096);

/// Direction alignment for a signal sum_j b_j |j,0>: the relative polar angle
/// carries density |sum_j sqrt(2j+1) b_j P_j(cos beta)|^2 (1/2) sin(beta),
/// sampled by inverse CDF on a tabulated grid.
EstimationRun simulate_direction_alignment(const RealVector& b,
                                           const std::function<double(double)>& payoff,
                                           long trials, std::uint64_t seed, int table_nodes = 4096);

/// Two parallel spins |n>|n> against the symmetric-subspace covariant POVM.
EstimationRun simulate_two_spin_parallel(long trials, std::uint64_t seed, int table_nodes = 4096);

/// Cartesian alignment over Bell-entangled (non-stretched) sectors with a
/// class-function payoff; class angle sampled by inverse CDF against the
/// Weyl measure, then a uniform conjugation.
EstimationRun simulate_cartesian_alignment(const RealVector& beta,
                                           const std::function<double(double)>& payoff,
                                           long trials, std::uint64_t seed, int table_nodes = 4096);

struct BitwiseResult {
  double theta_estimate = 0;
  std::vector<int> bits;          // estimated binary expansion of theta/pi
  long repetitions = 0;           // n, per-bit sample count
  long long qubit_count = 0;      // n (2^k - 1)
  bool success = false;           // |theta - theta_est| <= pi/2^{k+1} (circular)
};

/// Multi-round bitwise phase alignment: bit t_{j+1} estimated from n samples
/// of the exchange observable with <O> = cos(2^{j+1} theta); the conjugate
/// quadrature shares the same n-sample budget so the angle is unambiguous.
BitwiseResult bitwise_phase_protocol(int k_bits, double eps, double theta_true,
                                     std::uint64_t seed);

}  // namespace qrf::align

/// @file
/// Nonlocal resource measures under local superselection rules: E_SSR for
/// pure states, superselection-induced variance, refbit activation, two-copy
/// distillation and the bit-commitment token analysis.
#pragma once

#include "qrf/types.hpp"

namespace qrf::resources {

/// Entanglement accessible under local number superselection, for a pure
/// bipartite state with dims [d_A, d_B]: decompose into joint local-number
/// blocks and average the block entanglement entropies.
double e_ssr_pure(const StateVector& psi, const std::vector<int>& number_a,
                  const std::vector<int>& number_b);

/// Superselection-induced variance 4 Var(N_A) of a total-number eigenstate.
double siv(const StateVector& psi, const std::vector<int>& number_a,
           const std::vector<int>& number_b);

struct ProtocolResult {
  double success_probability = 0;
  StateVector post_state;  // wings ordered (A modes, B modes)
};

/// Refbit |+>_A |+>_B activates the two-mode single photon: project both
/// wings on local photon number one and renormalize.
ProtocolResult activate_refbit();

/// Two copies of the two-mode single photon distilled the same way.
ProtocolResult two_copy_distill();

struct BitCommitmentTokens {
  DensityOperator rho0;
  DensityOperator rho1;
  double fidelity = 0;            // Uhlmann, < 1
  bool ssr_distinguishable = false;  // pinched (j,m)-diagonals differ
  Dims token_basis_two_j;         // 2j of each token basis state
  Dims token_basis_m;             // m label of each token basis state
};

/// Token reductions of the two ancilla-free bit-commitment states under the
/// J^2-diagonal superselection rule.
BitCommitmentTokens bit_commitment_tokens();

}  // namespace qrf::resources

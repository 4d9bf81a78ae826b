/// @file
/// Lifting superselection rules with quantum reference frames: the $-map for
/// finite cyclic groups with exact Born-rule reproduction, and the U(1)
/// quantization/dequantization maps between external and relational
/// descriptions of a phase reference.
#pragma once

#include "qrf/types.hpp"

#include <optional>

namespace qrf::lift {

/// Unitary representation of Z_d on the system: element(k) = generator^k.
class CyclicRep {
 public:
  CyclicRep(int order, Matrix generator);

  int order() const { return d_; }
  long system_dim() const { return gen_.rows(); }
  Matrix element(int k) const;

  /// Phase representation exp(i 2 pi k N / d) for a diagonal number operator.
  static CyclicRep phase_rep(int order, const std::vector<int>& number_spectrum);

 private:
  int d_;
  Matrix gen_;
};

/// $-map: A -> sum_g |g><g| (x) U(g) A U(g)^dag on C^d (x) H_S.
/// Unit-weight sum, so $(AB) = $(A)$(B) exactly; density operators are
/// normalized separately as rho_inv = $(rho)/d.
Matrix dollar_map(const Matrix& a, const CyclicRep& rep);

Matrix invariant_density(const DensityOperator& rho, const CyclicRep& rep);
Matrix invariant_effect(const Matrix& effect, const CyclicRep& rep);
QuantumChannel invariant_channel(const QuantumChannel& ch, const CyclicRep& rep);

struct BornCheck {
  double lhs = 0;  // Tr[E_inv(rho_inv) effect_inv]
  double rhs = 0;  // Tr[E(rho) effect]
};

/// Born-rule reproduction through the invariant representation; holds exactly.
BornCheck invariant_born_check(const DensityOperator& rho, const Matrix& effect,
                               const std::optional<QuantumChannel>& channel,
                               const CyclicRep& rep);

/// sum_m c_m |m>_S -> sum_m c_m |n_rf - m>_R |m>_S, a total-number eigenstate.
StateVector quantize_phase_state(const Vector& system_coeffs, int n_rf);

/// Relabel |r>_R |m>_S as |r+m>_gl |m>_rel and trace the global number label.
/// The support must lie in the wedge m_max <= r+m <= dim_R - 1 (reference
/// more excited than the system); anything outside is rejected.
DensityOperator dequantize_u1(const DensityOperator& rho_rs);
DensityOperator dequantize_u1(const StateVector& psi_rs);

}  // namespace qrf::lift

/// @file
/// Operations on quantum states: composition, reduction, channel action,
/// Born-rule sampling, fidelity and entanglement entropy.
#pragma once

#include "qrf/rng.hpp"
#include "qrf/types.hpp"

#include <set>
#include <string>

namespace qrf {

Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(const Vector& a, const Vector& b);

StateVector tensor(const StateVector& a, const StateVector& b);
DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);

/// Reduced state on the kept subsystem indices (order preserved).
DensityOperator partial_trace(const DensityOperator& rho, const std::set<int>& keep);

DensityOperator apply_channel(const QuantumChannel& ch, const DensityOperator& rho);

/// Born-rule outcome probabilities Tr(E_k rho).
std::vector<double> outcome_probabilities(const Povm& p, const DensityOperator& rho);

/// One outcome drawn from the Born distribution; deterministic given seed.
std::string sample_measurement(const Povm& p, const DensityOperator& rho, std::uint64_t seed);

/// Uhlmann fidelity, squared convention: F(rho,sigma) = (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2,
/// so F(|a>,|b>) = |<a|b>|^2.
double fidelity(const DensityOperator& rho, const DensityOperator& sigma);

/// Base-2 entanglement entropy of |psi> across the cut after subsystem `cut`
/// (first factor = dims[0..cut], second = the rest).
double entanglement_entropy(const StateVector& psi, int cut);

/// Base-2 von Neumann entropy.
double von_neumann_entropy(const DensityOperator& rho);

}  // namespace qrf

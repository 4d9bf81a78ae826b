/// @file
/// Bounded quantum reference frames: relational spin discrimination, the
/// measurement-back-action degradation channel with its closed-form success
/// curve and longevity, and the Jaynes-Cummings bounded-clock gate fidelity.
#pragma once

#include "qrf/group.hpp"
#include "qrf/types.hpp"

#include <complex>

namespace qrf::bounded {

/// Spin-j directional frame.
struct SpinJFrame {
  group::HalfInt j;
  DensityOperator state;
};

SpinJFrame coherent_frame(group::HalfInt j);  ///< |j,j><j,j|

struct DiscriminationResult {
  Povm povm;                     // {Pi_{j+1/2}, Pi_{j-1/2}} on H_j (x) H_{1/2}
  double p_plus_given_plus = 0;  // (2j+1)/(2j+2)
  double p_minus_given_minus = 0;
  double p_plus_given_minus = 0;
  double p_minus_given_plus = 0;
  double p_success = 0;          // 1 - 1/(4(j+1))
};

/// Aligned/anti-aligned discrimination of a spin-1/2 against the coherent
/// spin-j frame. The probability table is Bayesian, p(state|outcome) at
/// equal priors, and its equal-weight average gives the closed form
/// 1 - 1/(4(j+1)). The likelihood-based success quality appears as the
/// n=0 value of the degradation curve instead.
DiscriminationResult discriminate_aligned(group::HalfInt j);

/// Kraus map of one averaged measurement on a maximally mixed spin-1/2.
QuantumChannel degradation_channel(group::HalfInt j);

SpinJFrame degradation_step(const SpinJFrame& frame);

/// Average success quality (1/2) Tr_R[rho (E^+_00 + E^-_11)] of a frame state.
double success_quality(const SpinJFrame& frame);

struct DegradationCurve {
  std::vector<double> simulated;    // P_s(n) from iterating the Kraus map
  std::vector<double> closed_form;  // 1/2 + j/(2j+1) (1 - 2/(2j+1)^2)^n
};

DegradationCurve degradation_curve(group::HalfInt j, int n_steps);

struct LongevityResult {
  double rate = 0;                  // R = -2j/(2j+1)^3, initial slope
  long long n_linearized = 0;       // floor(-eps/R), the linearized-bound count
  long long n_max = 0;              // floor(-eps/(4R)); follows the eps j^2 law
  long long n_exact = 0;            // largest n with closed-form curve >= 1-eps
};

/// Number of measurements a spin-j frame survives at error budget eps.
LongevityResult longevity(group::HalfInt j, double eps);

struct JcGateResult {
  double f_quantized = 0;  // exact truncated evolution + dequantization
  double f_approx = 0;     // closed-form approximation
  double leak = 0;         // coherent-state population beyond the truncation
  int n_cut = 0;
  bool mean_photon_low = false;  // warns below <n> = 5
};

/// sigma_x gate driven by a coherent field through the Jaynes-Cummings
/// interaction, evolved exactly to t = pi/(2|alpha|g) in the truncated Fock
/// basis and compared with the external-field solution after dequantizing
/// the field. n_cut = 0 selects ceil(|alpha|^2 + 10|alpha|).
JcGateResult jc_gate_fidelity(std::complex<double> alpha, double g, int n_cut = 0);

}  // namespace qrf::bounded

#include "qrf/bounded.hpp"

#include "qrf/core.hpp"
#include "qrf/lift.hpp"

#include <cmath>

namespace qrf::bounded {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Projector onto total spin J inside H_j (x) H_{1/2}, built from
// Clebsch-Gordan coefficients. Joint basis: |j,m> (x) {|up>,|down>},
// m descending, system index fastest.
Matrix total_spin_projector(group::HalfInt j, group::HalfInt big_j) {
  int dj = j.dim();
  long dim = 2L * dj;
  Matrix proj = Matrix::Zero(dim, dim);
  double jv = j.value(), bjv = big_j.value();
  for (int tM = big_j.twice; tM >= -big_j.twice; tM -= 2) {
    Vector v = Vector::Zero(dim);
    double M = tM / 2.0;
    for (int s = 0; s < 2; ++s) {
      double ms = s == 0 ? 0.5 : -0.5;
      double m1 = M - ms;
      if (std::abs(m1) > jv + 1e-9) continue;
      double c = group::clebsch_gordan(jv, 0.5, bjv, m1, ms, M);
      if (c == 0.0) continue;
      long mi = (j.twice - int(std::lround(2 * m1))) / 2;  // m descending
      v(mi * 2 + s) = c;
    }
    proj += v * v.adjoint();
  }
  return proj;
}

}  // namespace

SpinJFrame coherent_frame(group::HalfInt j) {
  int d = j.dim();
  Matrix m = Matrix::Zero(d, d);
  m(0, 0) = 1.0;  // |j,j>, m descending
  return {j, DensityOperator(std::move(m), {d})};
}

DiscriminationResult discriminate_aligned(group::HalfInt j) {
  if (j.twice < 1) throw std::invalid_argument("discriminate_aligned: j >= 1/2");
  int dj = j.dim();
  Matrix pi_plus = total_spin_projector(j, group::HalfInt(j.twice + 1));
  Matrix pi_minus = total_spin_projector(j, group::HalfInt(j.twice - 1));

  // joint states |j,j> (x) |up/down>
  Vector up = Vector::Zero(2L * dj), dn = Vector::Zero(2L * dj);
  up(0) = 1.0;
  dn(1) = 1.0;
  double like_pp = (up.adjoint() * pi_plus * up).value().real();   // p(out+ | aligned)
  double like_mp = (up.adjoint() * pi_minus * up).value().real();
  double like_pm = (dn.adjoint() * pi_plus * dn).value().real();
  double like_mm = (dn.adjoint() * pi_minus * dn).value().real();

  DiscriminationResult out{
      Povm({pi_plus, pi_minus}, {"aligned", "anti-aligned"}), 0, 0, 0, 0, 0};
  // Bayesian table at equal priors: p(state | outcome)
  double p_out_plus = 0.5 * (like_pp + like_pm);
  double p_out_minus = 0.5 * (like_mp + like_mm);
  out.p_plus_given_plus = 0.5 * like_pp / p_out_plus;
  out.p_minus_given_plus = 0.5 * like_pm / p_out_plus;
  out.p_plus_given_minus = p_out_minus > 0 ? 0.5 * like_mp / p_out_minus : 0;
  out.p_minus_given_minus = p_out_minus > 0 ? 0.5 * like_mm / p_out_minus : 1;
  out.p_success = 0.5 * (out.p_plus_given_plus + out.p_minus_given_minus);
  return out;
}

QuantumChannel degradation_channel(group::HalfInt j) {
  int dj = j.dim();
  Matrix pi_plus = total_spin_projector(j, group::HalfInt(j.twice + 1));
  Matrix pi_minus = total_spin_projector(j, group::HalfInt(j.twice - 1));
  std::vector<Matrix> kraus;
  double w = 1.0 / std::sqrt(2.0);
  for (const Matrix* pc : {&pi_plus, &pi_minus}) {
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        // E^c_{ab} = <a| Pi_c |b> acting on the frame
        Matrix e = Matrix::Zero(dj, dj);
        for (int r = 0; r < dj; ++r)
          for (int c = 0; c < dj; ++c) e(r, c) = (*pc)(r * 2 + a, c * 2 + b);
        kraus.push_back(w * e);
      }
  }
  return QuantumChannel(std::move(kraus), "rf-degradation");
}

SpinJFrame degradation_step(const SpinJFrame& frame) {
  return {frame.j, apply_channel(degradation_channel(frame.j), frame.state)};
}

double success_quality(const SpinJFrame& frame) {
  int dj = frame.j.dim();
  Matrix pi_plus = total_spin_projector(frame.j, group::HalfInt(frame.j.twice + 1));
  Matrix pi_minus = total_spin_projector(frame.j, group::HalfInt(frame.j.twice - 1));
  Matrix e_plus_00 = Matrix::Zero(dj, dj), e_minus_11 = Matrix::Zero(dj, dj);
  for (int r = 0; r < dj; ++r)
    for (int c = 0; c < dj; ++c) {
      e_plus_00(r, c) = pi_plus(r * 2 + 0, c * 2 + 0);
      e_minus_11(r, c) = pi_minus(r * 2 + 1, c * 2 + 1);
    }
  return 0.5 * ((e_plus_00 + e_minus_11) * frame.state.matrix()).trace().real();
}

DegradationCurve degradation_curve(group::HalfInt j, int n_steps) {
  if (n_steps < 0) throw std::invalid_argument("degradation_curve: n_steps >= 0");
  DegradationCurve out;
  out.simulated.reserve(n_steps + 1);
  out.closed_form.reserve(n_steps + 1);
  double jj = j.value();
  double a = jj / (2 * jj + 1);
  double q = 1.0 - 2.0 / ((2 * jj + 1) * (2 * jj + 1));
  SpinJFrame frame = coherent_frame(j);
  QuantumChannel ch = degradation_channel(j);
  for (int n = 0; n <= n_steps; ++n) {
    out.simulated.push_back(success_quality(frame));
    out.closed_form.push_back(0.5 + a * std::pow(q, n));
    if (n < n_steps) frame.state = apply_channel(ch, frame.state);
  }
  return out;
}

LongevityResult longevity(group::HalfInt j, double eps) {
  if (eps <= 0 || eps >= 0.5) throw std::invalid_argument("longevity: eps in (0, 1/2)");
  LongevityResult out;
  double jj = j.value();
  double d = 2 * jj + 1;
  out.rate = -2 * jj / (d * d * d);
  out.n_linearized = (long long)(std::floor(-eps / out.rate));
  out.n_max = (long long)(std::floor(-eps / (4 * out.rate)));
  // exact count from the closed-form curve against the same 1-eps threshold
  double a = jj / d;
  double q = 1.0 - 2.0 / (d * d);
  if (0.5 + a < 1.0 - eps) {
    out.n_exact = 0;
  } else {
    out.n_exact = (long long)(std::floor(std::log((0.5 - eps) / a) / std::log(q)));
  }
  return out;
}

JcGateResult jc_gate_fidelity(std::complex<double> alpha, double g, int n_cut) {
  double amag = std::abs(alpha);
  if (amag <= 0 || g <= 0) throw std::invalid_argument("jc_gate_fidelity: need |alpha|, g > 0");
  double a2 = amag * amag;
  JcGateResult out;
  out.n_cut = n_cut > 0 ? n_cut : int(std::ceil(a2 + 10 * amag));
  out.mean_photon_low = a2 < 5.0;

  // coherent amplitudes |c_m|^2 = e^{-a2} a2^m / m!
  std::vector<double> p(out.n_cut + 1);
  double logp = -a2;  // log of m=0 term
  for (int m = 0; m <= out.n_cut; ++m) {
    p[m] = std::exp(logp);
    logp += std::log(a2) - std::log(double(m + 1));
  }
  double tail = 1.0;
  for (double v : p) tail -= v;
  out.leak = std::max(0.0, tail);
  if (out.leak > 1e-8)
    throw std::invalid_argument("jc_gate_fidelity: truncation leak " + std::to_string(out.leak));

  // Atom starts excited with the field coherent; each excitation block
  // (|ground, n>, |excited, n-1>) rotates by g sqrt(n) t under the
  // Jaynes-Cummings interaction. Evolve exactly to the sigma_x gate time,
  // then externalize the field via the global/relational factorization.
  double t = kPi / (2 * amag * g);
  long dr = out.n_cut + 1;
  Vector joint = Vector::Zero(dr * 2);  // dims [field, atom], atom index = excitation
  double phase0 = std::arg(alpha);
  for (int m = 0; m + 1 <= out.n_cut; ++m) {
    int n = m + 1;
    Complex cm = std::sqrt(p[m]) * std::exp(Complex(0, m * phase0));
    double ang = std::sqrt(double(n)) * g * t;
    joint(long(n) * 2 + 0) += -std::sin(ang) * cm;       // |n>_R |ground>
    joint(long(m) * 2 + 1) += std::cos(ang) * cm;        // |n-1>_R |excited>
  }
  joint /= joint.norm();  // conditioning on the truncated Fock space
  DensityOperator relational =
      lift::dequantize_u1(StateVector(joint, {int(dr), 2}));
  Vector psi_c(2);
  psi_c << std::sin(amag * g * t), std::cos(amag * g * t);
  out.f_quantized = (psi_c.adjoint() * relational.matrix() * psi_c).value().real();
  out.f_approx = 0.5 * (1.0 - std::cos(kPi * std::sqrt(1.0 + a2) / amag) *
                                  std::exp(-kPi * kPi / (8.0 * (a2 + 1.0))));
  return out;
}

}  // namespace qrf::bounded

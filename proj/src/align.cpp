#include "qrf/align.hpp"

#include "qrf/core.hpp"
#include "qrf/twirl.hpp"

#include <algorithm>
#include <cmath>

namespace qrf::align {

namespace {

constexpr double kPi = 3.14159265358979323846;

RealVector top_eigenvector(const RealMatrix& m, double* eigenvalue) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(m);
  long last = m.rows() - 1;
  *eigenvalue = es.eigenvalues()(last);
  RealVector v = es.eigenvectors().col(last);
  // deterministic sign: first nonnegligible coefficient >= 0
  for (long i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-12) {
      if (v(i) < 0) v = -v;
      break;
    }
  }
  return v;
}

// Tabulated inverse CDF for densities on [a,b]; linear interpolation.
struct InverseCdf {
  std::vector<double> x, cum;

  InverseCdf(const std::function<double(double)>& density, double a, double b, int nodes) {
    x.resize(nodes + 1);
    cum.resize(nodes + 1);
    double h = (b - a) / nodes;
    double prev = std::max(0.0, density(a));
    x[0] = a;
    cum[0] = 0;
    for (int i = 1; i <= nodes; ++i) {
      x[i] = a + i * h;
      double cur = std::max(0.0, density(x[i]));
      cum[i] = cum[i - 1] + 0.5 * (prev + cur) * h;
      prev = cur;
    }
    double total = cum.back();
    if (total <= 0) throw std::invalid_argument("InverseCdf: vanishing density");
    for (double& c : cum) c /= total;
  }

  double sample(double u) const {
    auto it = std::upper_bound(cum.begin(), cum.end(), u);
    std::size_t i = std::min<std::size_t>(std::max<long>(1, it - cum.begin()), cum.size() - 1);
    double c0 = cum[i - 1], c1 = cum[i];
    double t = (c1 > c0) ? (u - c0) / (c1 - c0) : 0.5;
    return x[i - 1] + t * (x[i] - x[i - 1]);
  }
};

EstimationRun run_trials(const std::function<double(Rng&)>& one_trial, long trials,
                         std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("simulate: trials >= 1");
  EstimationRun run;
  run.trials = trials;
  run.seed = seed;
  run.payoffs.resize(trials);
  Rng rng(seed);
  double sum = 0, sum2 = 0;
  for (long t = 0; t < trials; ++t) {
    double p = one_trial(rng);
    run.payoffs[t] = p;
    sum += p;
    sum2 += p * p;
  }
  run.mean = sum / trials;
  double var = trials > 1 ? std::max(0.0, (sum2 - trials * run.mean * run.mean) / (trials - 1)) : 0;
  run.std_error = std::sqrt(var / trials);
  return run;
}

}  // namespace

CovariantMeasurement fiducial_povm(const group::IrrepDecomposition& dec,
                                   const std::vector<SectorSupport>* support_override) {
  CovariantMeasurement m;
  Vector e_coupled = Vector::Zero(dec.dim());
  for (const auto& blk : dec.blocks()) {
    int d_max = std::min(blk.gauge_dim, blk.multiplicity);
    int rank = d_max;
    if (support_override) {
      rank = 0;
      for (const auto& s : *support_override)
        if (s.j == blk.j) rank = s.rank;
      if (rank < 0 || rank > d_max)
        throw std::invalid_argument("fiducial_povm: inconsistent support spec");
      if (rank == 0) continue;
    }
    m.support.push_back({blk.j, rank});
    double amp = std::sqrt(double(blk.gauge_dim));
    // pair the mu-th multiplicity column with a centered block of m values,
    // e.g. the single m=0 row of a full-multiplicity integer-j sector
    int shift = (blk.gauge_dim - rank) / 2;
    for (int mu = 0; mu < rank; ++mu)
      e_coupled(blk.offset + mu * blk.gauge_dim + mu + shift) = amp;
  }
  m.fiducial = dec.isometry().adjoint() * e_coupled;
  return m;
}

double covariant_completeness_error(const CovariantMeasurement& m,
                                    const group::IrrepDecomposition& dec) {
  Matrix effect = m.fiducial * m.fiducial.adjoint();
  Matrix sigma = dec.isometry() * effect * dec.isometry().adjoint();
  Matrix twirled = twirl::block_twirl_coupled(sigma, dec);
  // support projector in the coupled basis
  Matrix proj = Matrix::Zero(dec.dim(), dec.dim());
  for (const auto& s : m.support) {
    const auto* blk = dec.block(s.j);
    for (int mu = 0; mu < s.rank; ++mu)
      for (int g = 0; g < blk->gauge_dim; ++g) {
        long r = blk->offset + mu * blk->gauge_dim + g;
        proj(r, r) = 1.0;
      }
  }
  return (twirled - proj).cwiseAbs().maxCoeff();
}

MaxLikelihoodResult max_likelihood_optimum(const group::IrrepDecomposition& dec) {
  CovariantMeasurement m = fiducial_povm(dec);
  MaxLikelihoodResult out;
  out.mu_max = m.fiducial.squaredNorm();
  out.state = m.fiducial / m.fiducial.norm();
  return out;
}

MaxLikelihoodResult max_likelihood_optimum_phase(int n_max) {
  if (n_max < 0) throw std::invalid_argument("max_likelihood_optimum_phase: n_max >= 0");
  MaxLikelihoodResult out;
  out.mu_max = n_max + 1;
  out.state = Vector::Constant(n_max + 1, 1.0 / std::sqrt(double(n_max + 1)));
  return out;
}

DirectionMaxLikelihoodResult direction_max_likelihood(int n_qubits) {
  if (n_qubits < 2 || n_qubits % 2 != 0)
    throw std::invalid_argument("direction_max_likelihood: N must be even and >= 2");
  int k = n_qubits / 2;
  DirectionMaxLikelihoodResult out;
  out.mu_max = double(k + 1) * double(k + 1);  // sum_j (2j+1)
  out.b = RealVector(k + 1);
  for (int j = 0; j <= k; ++j) out.b(j) = std::sqrt(2.0 * j + 1.0) / (k + 1);
  return out;
}

PhaseFidelityResult phase_fidelity_optimum(int n_max) {
  if (n_max < 1) throw std::invalid_argument("phase_fidelity_optimum: N >= 1");
  int n = n_max + 1;
  RealMatrix m = RealMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = 0.5;
    if (i + 1 < n) m(i, i + 1) = m(i + 1, i) = 0.25;
  }
  PhaseFidelityResult out;
  out.coefficients = top_eigenvector(m, &out.f_bar);
  out.f_closed_form = 0.5 * (1.0 + std::cos(kPi / (n_max + 2)));
  return out;
}

DirectionFidelityResult direction_fidelity_optimum(int n_qubits) {
  if (n_qubits < 2 || n_qubits % 2 != 0)
    throw std::invalid_argument("direction_fidelity_optimum: N must be even and >= 2");
  int k = n_qubits / 2;
  RealMatrix m = RealMatrix::Zero(k + 1, k + 1);
  for (int j = 0; j <= k; ++j) m(j, j) = 0.5;
  for (int j = 1; j <= k; ++j)
    m(j - 1, j) = m(j, j - 1) = (j / 2.0) / std::sqrt(4.0 * j * j - 1.0);
  DirectionFidelityResult out;
  out.b = top_eigenvector(m, &out.f_bar);
  out.f_closed_form = 0.5 * (1.0 + group::legendre_largest_zero(k + 1));
  return out;
}

CartesianFidelityResult cartesian_fidelity_optimum(int n_qubits) {
  if (n_qubits < 4 || n_qubits % 2 != 0)
    throw std::invalid_argument("cartesian_fidelity_optimum: N must be even and >= 4");
  int k = n_qubits / 2;
  group::CharacterExpansion payoff = group::CharacterExpansion::cartesian_fidelity();

  RealMatrix m = RealMatrix::Zero(k + 1, k + 1);
  // Bell-entangled sectors: <e_j|U|e_j> = chi_j/(2j+1); weights (2j+1) cancel
  for (int j = 0; j < k; ++j)
    for (int jp = j; jp < k; ++jp) {
      double val = group::integrate_class_function(
          [&](double w) {
            return group::su2_character(group::HalfInt(2 * j), w) *
                   group::su2_character(group::HalfInt(2 * jp), w) * payoff(w);
          },
          512);
      m(j, jp) = m(jp, j) = val;
    }

  // Stretched sector |N/2,N/2>: D^{K}_{KK}(Omega) = e^{-iK(alpha+gamma)} cos(beta/2)^{2K}
  // depends on (u = alpha+gamma, beta) only, with class angle cos(w/2) = cos(b/2) cos(u/2);
  // Haar measure reduces to sin(b) db du / (8 pi) over [0,pi] x [0,4pi).
  {
    auto qb = group::gauss_legendre(256, 0.0, kPi);
    int nu = 512;
    double hu = 4 * kPi / nu;
    double diag = 0;
    std::vector<double> cross(k, 0.0);
    for (int ib = 0; ib < 256; ++ib) {
      double b = qb.nodes[ib], wb = qb.weights[ib] * std::sin(b);
      double cb = std::cos(b / 2);
      double djj = std::pow(cb, n_qubits);
      for (int iu = 0; iu < nu; ++iu) {
        double u = (iu + 0.5) * hu;
        double cw2 = std::clamp(cb * std::cos(u / 2), -1.0, 1.0);
        double w = 2 * std::acos(cw2);
        double f = payoff(w);
        double meas = wb * hu / (8 * kPi);
        // |D^K_KK|^2 = cos^{2N}(b/2); phases cancel on the diagonal
        diag += meas * djj * djj * f;
        double re_d = djj * std::cos(k * u);  // Re D^K_KK (phase e^{-iKu})
        for (int j = 0; j < k; ++j)
          cross[j] += meas * group::su2_character(group::HalfInt(2 * j), w) * re_d * f;
      }
    }
    m(k, k) = (n_qubits + 1) * diag;
    for (int j = 0; j < k; ++j) m(j, k) = m(k, j) = std::sqrt(double(n_qubits + 1)) * cross[j];
  }

  CartesianFidelityResult out;
  out.payoff_matrix = m;
  out.beta = top_eigenvector(m, &out.f_bar);
  out.heisenberg_ratio = (1.0 - out.f_bar) * double(n_qubits) * double(n_qubits) / (kPi * kPi);
  return out;
}

double two_spin_parallel_fidelity() {
  auto q = group::gauss_legendre(256, 0.0, kPi);
  double acc = 0;
  for (int i = 0; i < 256; ++i) {
    double b = q.nodes[i];
    double c2 = std::cos(b / 2) * std::cos(b / 2);
    acc += q.weights[i] * 0.5 * std::sin(b) * (3.0 * c2 * c2) * c2;
  }
  return acc;
}

double two_spin_antiparallel_fidelity() {
  auto q = group::gauss_legendre(256, 0.0, kPi);
  double acc = 0;
  for (int i = 0; i < 256; ++i) {
    double b = q.nodes[i];
    double a = 1.0 + std::sqrt(3.0) * std::cos(b);
    acc += q.weights[i] * 0.5 * std::sin(b) * (a * a / 2.0) * std::cos(b / 2) * std::cos(b / 2);
  }
  return acc;
}

EstimationRun simulate_phase_alignment(const RealVector& psi,
                                       const std::function<double(double)>& payoff, long trials,
                                       std::uint64_t seed, int table_nodes) {
  if (std::abs(psi.squaredNorm() - 1.0) > 1e-10)
    throw std::invalid_argument("simulate_phase_alignment: state not normalized");
  auto density = [&](double theta) {
    Complex a = 0;
    for (long n = 0; n < psi.size(); ++n) a += psi(n) * std::exp(Complex(0, n * theta));
    return std::norm(a) / (2 * kPi);
  };
  InverseCdf cdf(density, 0.0, 2 * kPi, table_nodes);
  return run_trials(
      [&](Rng& rng) {
        rng.uniform();  // the true phase; payoff depends only on the relative angle
        double rel = cdf.sample(rng.uniform());
        return payoff(rel);
      },
      trials, seed);
}

EstimationRun simulate_direction_alignment(const RealVector& b,
                                           const std::function<double(double)>& payoff,
                                           long trials, std::uint64_t seed, int table_nodes) {
  if (std::abs(b.squaredNorm() - 1.0) > 1e-10)
    throw std::invalid_argument("simulate_direction_alignment: state not normalized");
  auto density = [&](double beta) {
    double a = 0;
    for (long j = 0; j < b.size(); ++j)
      a += std::sqrt(2.0 * j + 1.0) * b(j) * group::legendre(int(j), std::cos(beta));
    return a * a * 0.5 * std::sin(beta);
  };
  InverseCdf cdf(density, 0.0, kPi, table_nodes);
  return run_trials(
      [&](Rng& rng) {
        group::Su2Element::haar_sample(rng);  // the true direction
        double rel = cdf.sample(rng.uniform());
        return payoff(rel);
      },
      trials, seed);
}

EstimationRun simulate_two_spin_parallel(long trials, std::uint64_t seed, int table_nodes) {
  auto density = [](double beta) {
    double c2 = std::cos(beta / 2) * std::cos(beta / 2);
    return 3.0 * c2 * c2 * 0.5 * std::sin(beta);
  };
  InverseCdf cdf(density, 0.0, kPi, table_nodes);
  return run_trials(
      [&](Rng& rng) {
        group::Su2Element::haar_sample(rng);
        double rel = cdf.sample(rng.uniform());
        return std::cos(rel / 2) * std::cos(rel / 2);
      },
      trials, seed);
}

EstimationRun simulate_cartesian_alignment(const RealVector& beta,
                                           const std::function<double(double)>& payoff,
                                           long trials, std::uint64_t seed, int table_nodes) {
  if (std::abs(beta.squaredNorm() - 1.0) > 1e-10)
    throw std::invalid_argument("simulate_cartesian_alignment: state not normalized");
  auto density = [&](double w) {
    double a = 0;
    for (long j = 0; j < beta.size(); ++j)
      a += beta(j) * group::su2_character(group::HalfInt(int(2 * j)), w);
    double s = std::sin(w / 2);
    return a * a * s * s / kPi;
  };
  InverseCdf cdf(density, 0.0, 2 * kPi, table_nodes);
  return run_trials(
      [&](Rng& rng) {
        group::Su2Element::haar_sample(rng);  // true frame
        double w = cdf.sample(rng.uniform());
        rng.uniform();  // uniform conjugation; payoff is a class function
        return payoff(w);
      },
      trials, seed);
}

BitwiseResult bitwise_phase_protocol(int k_bits, double eps, double theta_true,
                                     std::uint64_t seed) {
  if (k_bits < 1 || k_bits >= 20) throw std::invalid_argument("bitwise: k in [1,19]");
  if (eps <= 0 || eps >= 1) throw std::invalid_argument("bitwise: eps in (0,1)");
  if (theta_true < 0 || theta_true >= kPi) throw std::invalid_argument("bitwise: theta in [0,pi)");

  BitwiseResult out;
  double t_true = theta_true / kPi;  // binary fraction T = 0.t1 t2 ...
  out.repetitions = long(std::ceil(32.0 * std::log(2.0 * k_bits / eps)));
  out.qubit_count = out.repetitions * ((1LL << k_bits) - 1);

  Rng rng(seed);
  long n_cos = (out.repetitions + 1) / 2, n_sin = out.repetitions - n_cos;
  std::vector<double> x_hat(k_bits);
  for (int j = 0; j < k_bits; ++j) {
    double x = std::fmod(std::ldexp(t_true, j), 1.0);  // frac(2^j T)
    double pc = (1.0 + std::cos(2 * kPi * x)) / 2.0;
    double ps = (1.0 + std::sin(2 * kPi * x)) / 2.0;
    long cplus = 0, splus = 0;
    for (long s = 0; s < n_cos; ++s) cplus += rng.uniform() < pc ? 1 : 0;
    for (long s = 0; s < n_sin; ++s) splus += rng.uniform() < ps ? 1 : 0;
    double c = 2.0 * cplus / n_cos - 1.0;
    double sn = 2.0 * splus / n_sin - 1.0;
    x_hat[j] = std::atan2(sn, c) / (2 * kPi);
    if (x_hat[j] < 0) x_hat[j] += 1.0;
  }

  // sharpen from the least significant estimate upward: frac(2^{j} T) is one
  // of {x/2, x/2 + 1/2} given frac(2^{j+1} T) = x
  auto circ_dist = [](double a, double b) {
    double d = std::abs(a - b);
    return std::min(d, 1.0 - d);
  };
  double x_tilde = x_hat[k_bits - 1];
  for (int j = k_bits - 2; j >= 0; --j) {
    double c0 = x_tilde / 2, c1 = x_tilde / 2 + 0.5;
    x_tilde = circ_dist(x_hat[j], c0) <= circ_dist(x_hat[j], c1) ? c0 : c1;
  }

  out.theta_estimate = kPi * x_tilde;
  // k-bit string: the estimate rounded to the nearest multiple of 2^-k (mod 1)
  long grid = std::lround(std::ldexp(x_tilde, k_bits)) & ((1L << k_bits) - 1);
  out.bits.resize(k_bits);
  for (int i = 0; i < k_bits; ++i) out.bits[i] = int(grid >> (k_bits - 1 - i)) & 1;
  out.success = circ_dist(x_tilde, t_true) <= std::ldexp(1.0, -(k_bits + 1));
  return out;
}

}  // namespace qrf::align

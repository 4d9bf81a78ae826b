#include "qrf/lift.hpp"

#include "qrf/core.hpp"

#include <cmath>

namespace qrf::lift {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

CyclicRep::CyclicRep(int order, Matrix generator) : d_(order), gen_(std::move(generator)) {
  if (d_ < 1 || d_ > 64) throw std::invalid_argument("CyclicRep: order in [1,64]");
  if (gen_.rows() != gen_.cols()) throw std::invalid_argument("CyclicRep: generator not square");
  long n = gen_.rows();
  if ((gen_ * gen_.adjoint() - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("CyclicRep: generator not unitary");
  Matrix p = Matrix::Identity(n, n);
  for (int k = 0; k < d_; ++k) p = p * gen_;
  if ((p - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-8)
    throw std::invalid_argument("CyclicRep: generator^d != I");
}

Matrix CyclicRep::element(int k) const {
  k = ((k % d_) + d_) % d_;
  Matrix p = Matrix::Identity(gen_.rows(), gen_.cols());
  for (int i = 0; i < k; ++i) p = p * gen_;
  return p;
}

CyclicRep CyclicRep::phase_rep(int order, const std::vector<int>& number_spectrum) {
  long n = number_spectrum.size();
  Matrix gen = Matrix::Zero(n, n);
  for (long i = 0; i < n; ++i)
    gen(i, i) = std::exp(Complex(0, 2 * kPi * number_spectrum[i] / order));
  return CyclicRep(order, std::move(gen));
}

Matrix dollar_map(const Matrix& a, const CyclicRep& rep) {
  if (a.rows() != rep.system_dim() || a.cols() != rep.system_dim())
    throw std::invalid_argument("dollar_map: operator dimension mismatch");
  int d = rep.order();
  long ns = rep.system_dim();
  Matrix out = Matrix::Zero(d * ns, d * ns);
  Matrix u = Matrix::Identity(ns, ns);
  for (int g = 0; g < d; ++g) {
    out.block(g * ns, g * ns, ns, ns) = u * a * u.adjoint();
    u = u * rep.element(1);
  }
  return out;
}

Matrix invariant_density(const DensityOperator& rho, const CyclicRep& rep) {
  return dollar_map(rho.matrix(), rep) / double(rep.order());
}

Matrix invariant_effect(const Matrix& effect, const CyclicRep& rep) {
  return dollar_map(effect, rep);
}

QuantumChannel invariant_channel(const QuantumChannel& ch, const CyclicRep& rep) {
  std::vector<Matrix> kraus;
  kraus.reserve(ch.kraus().size());
  for (const Matrix& k : ch.kraus()) kraus.push_back(dollar_map(k, rep));
  return QuantumChannel(std::move(kraus), ch.label() + "-inv");
}

BornCheck invariant_born_check(const DensityOperator& rho, const Matrix& effect,
                               const std::optional<QuantumChannel>& channel,
                               const CyclicRep& rep) {
  BornCheck out;
  Matrix rho_s = rho.matrix();
  if (channel) {
    Matrix mapped = Matrix::Zero(rho_s.rows(), rho_s.cols());
    for (const Matrix& k : channel->kraus()) mapped += k * rho_s * k.adjoint();
    out.rhs = (mapped * effect).trace().real();
  } else {
    out.rhs = (rho_s * effect).trace().real();
  }

  Matrix rho_inv = invariant_density(rho, rep);
  Matrix e_inv = invariant_effect(effect, rep);
  Matrix state = rho_inv;
  if (channel) {
    QuantumChannel ch_inv = invariant_channel(*channel, rep);
    Matrix mapped = Matrix::Zero(state.rows(), state.cols());
    for (const Matrix& k : ch_inv.kraus()) mapped += k * state * k.adjoint();
    state = mapped;
  }
  out.lhs = (state * e_inv).trace().real();
  return out;
}

StateVector quantize_phase_state(const Vector& system_coeffs, int n_rf) {
  long ds = system_coeffs.size();
  int m_max = int(ds) - 1;
  if (n_rf < m_max)
    throw std::invalid_argument("quantize_phase_state: reference too small (n_rf < m_max)");
  long dr = n_rf + 1;
  Vector joint = Vector::Zero(dr * ds);
  for (long m = 0; m < ds; ++m) joint((n_rf - m) * ds + m) = system_coeffs(m);
  return StateVector(std::move(joint), {int(dr), int(ds)});
}

DensityOperator dequantize_u1(const DensityOperator& rho_rs) {
  if (rho_rs.dims().size() != 2)
    throw std::invalid_argument("dequantize_u1: expected dims [d_R, d_S]");
  long dr = rho_rs.dims()[0], ds = rho_rs.dims()[1];
  long m_max = ds - 1;
  const Matrix& rho = rho_rs.matrix();

  // wedge check: population on basis states with r+m outside [m_max, dr-1]
  double outside = 0;
  for (long r = 0; r < dr; ++r)
    for (long m = 0; m < ds; ++m) {
      long l = r + m;
      if (l < m_max || l > dr - 1) outside += std::abs(rho(r * ds + m, r * ds + m));
    }
  if (outside > 1e-10)
    throw std::invalid_argument("dequantize_u1: support outside the ladder wedge (" +
                                std::to_string(outside) + ")");

  // rho_rel[m,m'] = sum_l rho[(l-m, m), (l-m', m')]
  Matrix rel = Matrix::Zero(ds, ds);
  for (long l = m_max; l <= dr - 1; ++l)
    for (long m = 0; m < ds; ++m)
      for (long mp = 0; mp < ds; ++mp) rel(m, mp) += rho((l - m) * ds + m, (l - mp) * ds + mp);
  return DensityOperator(std::move(rel), {int(ds)});
}

DensityOperator dequantize_u1(const StateVector& psi_rs) {
  return dequantize_u1(DensityOperator::from_pure(psi_rs));
}

}  // namespace qrf::lift

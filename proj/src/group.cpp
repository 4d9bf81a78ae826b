#include "qrf/group.hpp"

#include "qrf/core.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>

namespace qrf::group {

namespace {

constexpr double kPi = 3.14159265358979323846;

// factorial table in extended precision; arguments stay < 180 here
long double factorial(int n) {
  static std::vector<long double> table = {1.0L};
  if (n < 0) throw std::invalid_argument("factorial: negative argument");
  while (int(table.size()) <= n) table.push_back(table.back() * (long double)(table.size()));
  return table[n];
}

bool is_half_integer(double x) { return std::abs(2 * x - std::round(2 * x)) < 1e-9; }

}  // namespace

HalfInt HalfInt::from_double(double j) {
  if (!is_half_integer(j)) throw std::invalid_argument("HalfInt: not a half-integer");
  return HalfInt(int(std::lround(2 * j)));
}

double clebsch_gordan(double j1, double j2, double j, double m1, double m2, double m) {
  for (double v : {j1, j2, j, m1, m2, m})
    if (!is_half_integer(v)) throw std::invalid_argument("clebsch_gordan: non-half-integer input");
  auto t = [](double v) { return int(std::lround(2 * v)); };
  int tj1 = t(j1), tj2 = t(j2), tj = t(j), tm1 = t(m1), tm2 = t(m2), tm = t(m);
  if (tm1 + tm2 != tm) return 0.0;
  if (tj < std::abs(tj1 - tj2) || tj > tj1 + tj2) return 0.0;
  if ((tj1 + tj2 + tj) % 2 != 0) return 0.0;
  if (std::abs(tm1) > tj1 || std::abs(tm2) > tj2 || std::abs(tm) > tj) return 0.0;
  if ((tj1 + tm1) % 2 != 0 || (tj2 + tm2) % 2 != 0 || (tj + tm) % 2 != 0) return 0.0;

  auto f = [](int twice) { return factorial(twice / 2); };
  // Racah's formula (Condon-Shortley phases, all coefficients real)
  long double pref = (long double)(tj + 1) * f(tj1 + tj2 - tj) * f(tj1 - tj2 + tj) *
                     f(-tj1 + tj2 + tj) / f(tj1 + tj2 + tj + 2);
  pref *= f(tj1 + tm1) * f(tj1 - tm1) * f(tj2 + tm2) * f(tj2 - tm2) * f(tj + tm) * f(tj - tm);
  pref = std::sqrt(pref);

  int kmin = std::max({0, (tj2 - tj - tm1) / 2, (tj1 - tj + tm2) / 2});
  int kmax = std::min({(tj1 + tj2 - tj) / 2, (tj1 - tm1) / 2, (tj2 + tm2) / 2});
  long double sum = 0.0L;
  for (int k = kmin; k <= kmax; ++k) {
    long double denom = factorial(k) * f(tj1 + tj2 - tj - 2 * k) * f(tj1 - tm1 - 2 * k) *
                        f(tj2 + tm2 - 2 * k) * f(tj - tj2 + tm1 + 2 * k) *
                        f(tj - tj1 - tm2 + 2 * k);
    sum += (k % 2 == 0 ? 1.0L : -1.0L) / denom;
  }
  return double(pref * sum);
}

RealMatrix wigner_d(HalfInt j, double beta) {
  int d = j.dim();
  RealMatrix out(d, d);
  double c = std::cos(beta / 2), s = std::sin(beta / 2);
  for (int a = 0; a < d; ++a) {
    int tmr = j.twice - 2 * a;  // 2m' (row)
    for (int b = 0; b < d; ++b) {
      int tmc = j.twice - 2 * b;  // 2m (column)
      int smin = std::max(0, (tmc - tmr) / 2);
      int smax = std::min((j.twice + tmc) / 2, (j.twice - tmr) / 2);
      long double pref = std::sqrt(factorial((j.twice + tmr) / 2) * factorial((j.twice - tmr) / 2) *
                                   factorial((j.twice + tmc) / 2) * factorial((j.twice - tmc) / 2));
      long double acc = 0.0L;
      for (int k = smin; k <= smax; ++k) {
        int pc = (j.twice + tmc) / 2 - k + (j.twice - tmr) / 2 - k;  // cos power
        int ps = (tmr - tmc) / 2 + 2 * k;                            // sin power
        long double denom = factorial((j.twice + tmc) / 2 - k) * factorial(k) *
                            factorial((tmr - tmc) / 2 + k) * factorial((j.twice - tmr) / 2 - k);
        long double sign = (((tmr - tmc) / 2 + k) % 2 == 0) ? 1.0L : -1.0L;
        acc += sign / denom * std::pow((long double)c, pc) * std::pow((long double)s, ps);
      }
      out(a, b) = double(pref * acc);
    }
  }
  return out;
}

Matrix wigner_D(HalfInt j, double alpha, double beta, double gamma) {
  RealMatrix d = wigner_d(j, beta);
  int n = j.dim();
  Matrix out(n, n);
  for (int a = 0; a < n; ++a) {
    double mp = (j.twice - 2 * a) / 2.0;
    for (int b = 0; b < n; ++b) {
      double m = (j.twice - 2 * b) / 2.0;
      out(a, b) = std::exp(Complex(0, -mp * alpha)) * d(a, b) * std::exp(Complex(0, -m * gamma));
    }
  }
  return out;
}

Su2Element::Su2Element(double w, double x, double y, double z) : w_(w), x_(x), y_(y), z_(z) {
  double n = std::sqrt(w_ * w_ + x_ * x_ + y_ * y_ + z_ * z_);
  if (std::abs(n - 1.0) > 1e-12) {
    if (std::abs(n - 1.0) > 1e-6) throw std::invalid_argument("Su2Element: quaternion not unit");
    w_ /= n; x_ /= n; y_ /= n; z_ /= n;
  }
}

Su2Element Su2Element::from_euler(double alpha, double beta, double gamma) {
  // Rz(alpha) Ry(beta) Rz(gamma), each R_n(t) = cos(t/2) I - i sin(t/2) n.sigma
  Su2Element rza(std::cos(alpha / 2), 0, 0, std::sin(alpha / 2));
  Su2Element ryb(std::cos(beta / 2), 0, std::sin(beta / 2), 0);
  Su2Element rzg(std::cos(gamma / 2), 0, 0, std::sin(gamma / 2));
  return rza * ryb * rzg;
}

Su2Element Su2Element::haar_sample(Rng& rng) {
  double a, b, c, d, n2;
  do {
    a = rng.normal(); b = rng.normal(); c = rng.normal(); d = rng.normal();
    n2 = a * a + b * b + c * c + d * d;
  } while (n2 < 1e-12);
  double n = std::sqrt(n2);
  return {a / n, b / n, c / n, d / n};
}

Su2Element operator*(const Su2Element& a, const Su2Element& b) {
  return {a.w_ * b.w_ - a.x_ * b.x_ - a.y_ * b.y_ - a.z_ * b.z_,
          a.w_ * b.x_ + a.x_ * b.w_ + a.y_ * b.z_ - a.z_ * b.y_,
          a.w_ * b.y_ - a.x_ * b.z_ + a.y_ * b.w_ + a.z_ * b.x_,
          a.w_ * b.z_ + a.x_ * b.y_ - a.y_ * b.x_ + a.z_ * b.w_};
}

Matrix Su2Element::matrix2() const {
  Matrix u(2, 2);
  u << Complex(w_, -z_), Complex(-y_, -x_), Complex(y_, -x_), Complex(w_, z_);
  return u;
}

std::array<double, 3> Su2Element::euler_zyz() const {
  Matrix u = matrix2();
  double c = std::abs(u(0, 0)), s = std::abs(u(1, 0));
  double beta = 2 * std::atan2(s, c);
  double sum, diff;  // alpha+gamma, alpha-gamma
  if (s < 1e-14) {
    sum = -2 * std::arg(u(0, 0));
    diff = 0;
  } else if (c < 1e-14) {
    sum = 0;
    diff = 2 * std::arg(u(1, 0));
  } else {
    sum = -2 * std::arg(u(0, 0));
    diff = 2 * std::arg(u(1, 0));
  }
  return {(sum + diff) / 2, beta, (sum - diff) / 2};
}

double Su2Element::class_angle() const {
  return 2 * std::acos(std::clamp(w_, -1.0, 1.0));
}

Matrix Su2Element::matrix(HalfInt j) const {
  auto [alpha, beta, gamma] = euler_zyz();
  return wigner_D(j, alpha, beta, gamma);
}

Matrix Su2Element::collective(int n_qubits) const {
  Matrix u = matrix2();
  Matrix out = u;
  for (int k = 1; k < n_qubits; ++k) out = kron(out, u);
  return out;
}

const IrrepBlock* IrrepDecomposition::block(HalfInt j) const {
  for (const auto& b : blocks_)
    if (b.j == j) return &b;
  return nullptr;
}

std::string IrrepDecomposition::to_json() const {
  nlohmann::json j;
  j["n_qubits"] = n_;
  for (const auto& b : blocks_) {
    j["blocks"].push_back({{"two_j", b.j.twice},
                           {"gauge_dim", b.gauge_dim},
                           {"multiplicity", b.multiplicity},
                           {"offset", b.offset}});
  }
  std::vector<double> re, im;
  for (long r = 0; r < isometry_.rows(); ++r)
    for (long c = 0; c < isometry_.cols(); ++c) {
      re.push_back(isometry_(r, c).real());
      im.push_back(isometry_(r, c).imag());
    }
  j["isometry"] = {{"re", re}, {"im", im}};
  return j.dump();
}

IrrepDecomposition couple_qubits(int n_qubits) {
  if (n_qubits < 1) throw std::invalid_argument("couple_qubits: need at least one qubit");
  if (n_qubits > 10) throw std::invalid_argument("couple_qubits: dimension cap is 10 qubits");

  // Coupled states keyed by (path of intermediate 2j values, 2m); vectors over
  // the computational basis, qubit 0 most significant, |0> = m=+1/2.
  using Path = std::vector<int>;
  std::map<std::pair<Path, int>, Vector> states;
  {
    Vector up = Vector::Zero(2), dn = Vector::Zero(2);
    up(0) = 1.0;
    dn(1) = 1.0;
    states[{{1}, 1}] = up;
    states[{{1}, -1}] = dn;
  }

  Vector e0 = Vector::Zero(2), e1 = Vector::Zero(2);
  e0(0) = 1.0;
  e1(1) = 1.0;

  for (int q = 1; q < n_qubits; ++q) {
    std::map<std::pair<Path, int>, Vector> next;
    std::vector<Path> paths;
    for (const auto& [key, vec] : states)
      if (paths.empty() || paths.back() != key.first) paths.push_back(key.first);
    for (const Path& p : paths) {
      int tj1 = p.back();
      for (int tj : {tj1 - 1, tj1 + 1}) {
        if (tj < 0) continue;
        for (int tm = tj; tm >= -tj; tm -= 2) {
          Vector vec = Vector::Zero(1L << (q + 1));
          double j1 = tj1 / 2.0, jj = tj / 2.0, mm = tm / 2.0;
          for (int tms : {1, -1}) {
            auto it = states.find({p, tm - tms});
            if (it == states.end()) continue;
            double c = clebsch_gordan(j1, 0.5, jj, (tm - tms) / 2.0, tms / 2.0, mm);
            if (c == 0.0) continue;
            vec += c * kron(it->second, tms > 0 ? e0 : e1);
          }
          Path np = p;
          np.push_back(tj);
          next[{np, tm}] = std::move(vec);
        }
      }
    }
    states = std::move(next);
  }

  // Group paths by final j; lexicographic path order defines lambda.
  std::map<int, std::vector<Path>, std::greater<int>> paths_by_j;
  for (const auto& [key, vec] : states) {
    auto& v = paths_by_j[key.first.back()];
    if (std::find(v.begin(), v.end(), key.first) == v.end()) v.push_back(key.first);
  }
  for (auto& [tj, v] : paths_by_j) std::sort(v.begin(), v.end());

  IrrepDecomposition dec;
  dec.n_ = n_qubits;
  long n = 1L << n_qubits;
  dec.isometry_ = Matrix(n, n);
  long row = 0;
  for (const auto& [tj, plist] : paths_by_j) {
    IrrepBlock blk;
    blk.j = HalfInt(tj);
    blk.gauge_dim = tj + 1;
    blk.multiplicity = int(plist.size());
    blk.offset = row;
    dec.blocks_.push_back(blk);
    for (const Path& p : plist)
      for (int tm = tj; tm >= -tj; tm -= 2) dec.isometry_.row(row++) = states.at({p, tm}).transpose();
  }
  return dec;
}

long long multiplicity(int n_qubits, HalfInt j) {
  if (n_qubits < 1 || j.twice < 0 || j.twice > n_qubits)
    throw std::invalid_argument("multiplicity: j out of range");
  if ((n_qubits - j.twice) % 2 != 0)
    throw std::invalid_argument("multiplicity: N-2j must be even");
  int k = (n_qubits - j.twice) / 2;  // N/2 - j
  // binom(N, k) * (2j+1)/(N/2+j+1); the denominator (N+2j+2)/2 divides exactly
  unsigned __int128 binom = 1;
  for (int i = 1; i <= k; ++i) binom = binom * (unsigned)(n_qubits - k + i) / (unsigned)i;
  return (long long)(binom * (unsigned)(j.twice + 1) / (unsigned)((n_qubits + j.twice + 2) / 2));
}

long long classical_message_count(int n_qubits) {
  if (n_qubits < 1) throw std::invalid_argument("classical_message_count: N >= 1");
  int k = n_qubits / 2;
  long long binom = 1;
  for (int i = 1; i <= k; ++i) binom = binom * (n_qubits - k + i) / i;
  return binom;
}

double su2_character(HalfInt j, double omega) {
  double s = std::sin(omega / 2);
  if (std::abs(s) < 1e-7) {
    // direct sum over exponentials, exact at class boundaries
    double acc = 0;
    for (int tm = -j.twice; tm <= j.twice; tm += 2) acc += std::cos(tm / 2.0 * omega);
    return acc;
  }
  return std::sin((j.twice + 1) * omega / 2) / s;
}

double CharacterExpansion::operator()(double omega) const {
  double acc = 0;
  for (const auto& [j, a] : terms) acc += a * su2_character(j, omega);
  return acc;
}

CharacterExpansion CharacterExpansion::cartesian_fidelity() {
  return {{{HalfInt(0), 0.25}, {HalfInt(2), 0.25}}};
}

double legendre(int l, double x) {
  if (l < 0) throw std::invalid_argument("legendre: l >= 0");
  if (l == 0) return 1.0;
  double pm1 = 1.0, p = x;
  for (int k = 2; k <= l; ++k) {
    double pn = ((2 * k - 1) * x * p - (k - 1) * pm1) / k;
    pm1 = p;
    p = pn;
  }
  return p;
}

namespace {

double legendre_largest_zero_impl(int l, std::vector<double>& cache) {
  if (l < int(cache.size())) return cache[l];
  double lo = legendre_largest_zero_impl(l - 1, cache), hi = 1.0;
  // exactly one root of P_l in (x_{l-1,max}, 1) by interlacing
  for (int it = 0; it < 200; ++it) {
    double mid = (lo + hi) / 2;
    if ((legendre(l, mid) > 0) == (legendre(l, hi) > 0))
      hi = mid;
    else
      lo = mid;
    if (hi - lo < 1e-15) break;
  }
  double root = (lo + hi) / 2;
  if (int(cache.size()) == l) cache.push_back(root);
  return root;
}

}  // namespace

double legendre_largest_zero(int l) {
  if (l < 1) throw std::invalid_argument("legendre_largest_zero: l >= 1");
  static std::mutex mu;
  static std::vector<double> cache = {0.0, 0.0};  // cache[1] = 0
  std::lock_guard<std::mutex> lock(mu);
  return legendre_largest_zero_impl(l, cache);
}

Quadrature gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1");
  Quadrature q;
  q.nodes.resize(n);
  q.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Newton from Chebyshev initial guess
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p = legendre(n, x);
      double pm1 = legendre(n - 1, x);
      dp = n * (x * p - pm1) / (x * x - 1);
      double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double w = 2.0 / ((1 - x * x) * dp * dp);
    q.nodes[i] = a + (b - a) * (1 - x) / 2;  // ascending after flip
    q.weights[i] = w * (b - a) / 2;
  }
  std::reverse(q.nodes.begin(), q.nodes.end());
  std::reverse(q.weights.begin(), q.weights.end());
  return q;
}

double integrate_class_function(const std::function<double(double)>& f, int nodes) {
  static std::mutex mu;
  static std::map<int, Quadrature> cache;
  Quadrature q;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(nodes);
    if (it == cache.end()) it = cache.emplace(nodes, gauss_legendre(nodes, 0.0, 2 * kPi)).first;
    q = it->second;
  }
  double acc = 0;
  for (int i = 0; i < nodes; ++i) {
    double w = q.nodes[i];
    double s = std::sin(w / 2);
    acc += q.weights[i] * (s * s / kPi) * f(w);
  }
  return acc;
}

Su2Element haar_sample_su2(std::uint64_t seed) {
  Rng rng(seed);
  return Su2Element::haar_sample(rng);
}

}  // namespace qrf::group

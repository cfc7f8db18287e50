#include "rotalg/pr_numeric.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>

namespace rotalg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// FFTW planning is not thread-safe, so plan creation and destruction share one lock.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class FftPlan {
 public:
  explicit FftPlan(std::size_t n) : n_(n) {
    std::lock_guard lock(planner_mutex());
    buf_ = fftw_alloc_complex(n);
    const int len = static_cast<int>(n);
    forward_ = fftw_plan_dft_1d(len, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_1d(len, buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~FftPlan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
    fftw_free(buf_);
  }
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  // Unnormalized transform in place on `data`.
  void run(std::vector<Complex>& data, bool forward) {
    std::copy(data.begin(), data.end(), reinterpret_cast<Complex*>(buf_));
    fftw_execute(forward ? forward_ : backward_);
    std::copy_n(reinterpret_cast<Complex*>(buf_), n_, data.begin());
  }

 private:
  std::size_t n_;
  fftw_complex* buf_;
  fftw_plan forward_;
  fftw_plan backward_;
};

FftPlan& plan_for(std::size_t n) {
  thread_local std::map<std::size_t, std::unique_ptr<FftPlan>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<FftPlan>(n);
  return *slot;
}

// Signed frequency of bin j.
std::int64_t freq(std::size_t j, std::size_t n) {
  return j < n / 2 ? static_cast<std::int64_t>(j) : static_cast<std::int64_t>(j) - static_cast<std::int64_t>(n);
}

double frac(double x) { return x - std::floor(x); }

void check_grid(std::size_t n) {
  if (n < 256 || (n & (n - 1)) != 0) {
    throw NumericError("invalid-grid", "grid size " + std::to_string(n) + " must be a power of two >= 256");
  }
}

void check_same(const LoopElement& x, const LoopElement& y) {
  if (x.grid != y.grid || x.beta != y.beta) {
    throw NumericError("grid-mismatch", "loop elements differ in grid size or base step");
  }
}

void accumulate(LoopElement& out, std::int64_t k, const CircleFunction& f) {
  auto it = out.coeffs.find(k);
  if (it == out.coeffs.end()) {
    out.coeffs.emplace(k, f);
  } else {
    it->second = it->second + f;
  }
}

// C-infinity step from 0 at u <= 0 to 1 at u >= 1.
double smooth_step(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / u);
  const double b = std::exp(-1.0 / (1.0 - u));
  return a / (a + b);
}

double ramp_up(double u) {
  const double s = std::sin(std::numbers::pi * smooth_step(u) / 2.0);
  return s * s;
}

InvariantValue quarter_round(Complex v) {
  InvariantValue out{v, std::nullopt};
  double q = std::round(v.real() * 4.0) / 4.0;
  if (q == 0.0) q = 0.0;  // drop the sign of -0
  if (std::abs(v - Complex(q, 0.0)) <= 1e-6) out.rounded = q;
  return out;
}

}  // namespace

CircleFunction::CircleFunction(std::vector<Complex> samples) : samples_(std::move(samples)) {
  check_grid(samples_.size());
}

CircleFunction CircleFunction::zero(std::size_t n) { return CircleFunction(std::vector<Complex>(n)); }

CircleFunction CircleFunction::sample(std::size_t n, const std::function<Complex(double)>& fn) {
  std::vector<Complex> v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = fn(static_cast<double>(j) / static_cast<double>(n));
  return CircleFunction(std::move(v));
}

std::vector<Complex> CircleFunction::fourier() const {
  std::vector<Complex> c = samples_;
  plan_for(c.size()).run(c, true);
  const double inv = 1.0 / static_cast<double>(c.size());
  for (auto& z : c) z *= inv;
  return c;
}

CircleFunction CircleFunction::shift(double delta) const {
  const std::size_t n = samples_.size();
  std::vector<Complex> c = fourier();
  const double d = frac(delta);
  for (std::size_t j = 0; j < n; ++j) {
    // Reduce m * d mod 1 before the exponential to keep the phase accurate.
    const double phase = frac(static_cast<double>(freq(j, n)) * d);
    c[j] *= std::polar(1.0, kTwoPi * phase);
  }
  plan_for(n).run(c, false);
  return CircleFunction(std::move(c));
}

CircleFunction CircleFunction::reflect() const {
  const std::size_t n = samples_.size();
  std::vector<Complex> v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = samples_[(n - j) % n];
  return CircleFunction(std::move(v));
}

CircleFunction CircleFunction::conj() const {
  std::vector<Complex> v(samples_);
  for (auto& z : v) z = std::conj(z);
  return CircleFunction(std::move(v));
}

double CircleFunction::sup_norm() const {
  double m = 0.0;
  for (const auto& z : samples_) m = std::max(m, std::abs(z));
  return m;
}

Complex CircleFunction::mean() const {
  Complex s{};
  for (const auto& z : samples_) s += z;
  return s / static_cast<double>(samples_.size());
}

namespace {
template <typename Op>
CircleFunction pointwise(const CircleFunction& a, const CircleFunction& b, Op op) {
  if (a.size() != b.size()) throw NumericError("grid-mismatch", "circle functions differ in grid size");
  std::vector<Complex> v(a.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = op(a[j], b[j]);
  return CircleFunction(std::move(v));
}
}  // namespace

CircleFunction operator+(const CircleFunction& a, const CircleFunction& b) { return pointwise(a, b, std::plus<>{}); }
CircleFunction operator-(const CircleFunction& a, const CircleFunction& b) { return pointwise(a, b, std::minus<>{}); }
CircleFunction operator*(const CircleFunction& a, const CircleFunction& b) {
  return pointwise(a, b, std::multiplies<>{});
}
CircleFunction operator*(Complex s, const CircleFunction& a) {
  std::vector<Complex> v(a.samples());
  for (auto& z : v) z *= s;
  return CircleFunction(std::move(v));
}

const CircleFunction* LoopElement::find(std::int64_t k) const {
  auto it = coeffs.find(k);
  return it == coeffs.end() ? nullptr : &it->second;
}

LoopElement loop_mul(const LoopElement& x, const LoopElement& y) {
  check_same(x, y);
  LoopElement out{x.beta, x.grid, {}};
  for (const auto& [a, f] : x.coeffs) {
    for (const auto& [b, h] : y.coeffs) {
      accumulate(out, a + b, f * h.shift(static_cast<double>(a) * x.beta));
    }
  }
  return out;
}

LoopElement loop_star(const LoopElement& x) {
  LoopElement out{x.beta, x.grid, {}};
  for (const auto& [a, f] : x.coeffs) out.coeffs.emplace(-a, f.conj().shift(-static_cast<double>(a) * x.beta));
  return out;
}

LoopElement loop_add(const LoopElement& x, const LoopElement& y) {
  check_same(x, y);
  LoopElement out = x;
  for (const auto& [k, f] : y.coeffs) accumulate(out, k, f);
  return out;
}

LoopElement loop_sub(const LoopElement& x, const LoopElement& y) {
  check_same(x, y);
  LoopElement out = x;
  for (const auto& [k, f] : y.coeffs) accumulate(out, k, Complex(-1.0) * f);
  return out;
}

double loop_norm(const LoopElement& x) {
  double s = 0.0;
  for (const auto& [k, f] : x.coeffs) s += f.sup_norm();
  return s;
}

LoopElement flip_apply(const LoopElement& x) {
  LoopElement out{x.beta, x.grid, {}};
  for (const auto& [k, f] : x.coeffs) out.coeffs.emplace(-k, f.reflect());
  return out;
}

LoopElement loop_from_element(const Element& x, std::int64_t r, const ThetaParam& theta, std::size_t grid) {
  if (r < 1) throw std::invalid_argument("base power r must be positive");
  check_grid(grid);
  const double beta = frac(static_cast<double>(theta.numeric() * r - floor(theta.numeric() * r)));
  LoopElement out{beta, grid, {}};
  for (const auto& [mono, c] : x.terms()) {
    if (mono.m % r != 0) {
      throw std::invalid_argument("U exponent " + std::to_string(mono.m) + " is not a multiple of " + std::to_string(r));
    }
    const std::int64_t w = mono.m / r;
    const Complex coeff = numeric_eval(c, theta);
    accumulate(out, mono.n, CircleFunction::sample(grid, [&](double t) {
                 return coeff * std::polar(1.0, kTwoPi * frac(static_cast<double>(w) * t));
               }));
  }
  return out;
}

BumpPair bump_pair(double alpha, double eps, std::size_t grid, std::optional<double> center) {
  check_grid(grid);
  if (!(alpha > 0.0 && alpha < 1.0)) throw NumericError("alpha-out-of-range", "alpha must lie in (0,1)");
  if (!(eps > 0.0 && eps < std::min(alpha, 1.0 - alpha) / 2.0)) {
    throw NumericError("invalid-epsilon", "epsilon must satisfy 0 < eps < min(alpha, 1 - alpha)/2");
  }
  const double offset = center ? *center - (alpha + eps) / 2.0 : 0.0;
  auto f_at = [=](double t) {
    const double u = frac(t - offset);
    if (u < eps) return ramp_up(u / eps);
    if (u <= alpha) return 1.0;
    if (u < alpha + eps) return 1.0 - ramp_up((u - alpha) / eps);
    return 0.0;
  };
  auto g_at = [=](double t) {
    const double u = frac(t - offset);
    if (u <= alpha || u >= alpha + eps) return 0.0;
    return 0.5 * std::sin(std::numbers::pi * smooth_step((u - alpha) / eps));
  };
  return {CircleFunction::sample(grid, [&](double t) { return Complex(f_at(t)); }),
          CircleFunction::sample(grid, [&](double t) { return Complex(g_at(t)); })};
}

std::array<double, 3> bump_identity_residuals(const BumpPair& bp, double alpha) {
  const CircleFunction g_fwd = bp.g.shift(alpha);
  const CircleFunction f_back = bp.f.shift(-alpha);
  const CircleFunction one = CircleFunction::sample(bp.f.size(), [](double) { return Complex(1.0); });
  return {(bp.g * g_fwd).sup_norm(), (bp.g * (bp.f + f_back - one)).sup_norm(),
          (bp.f - bp.f * bp.f - bp.g * bp.g - g_fwd * g_fwd).sup_norm()};
}

LoopElement pr_from_bumps(const BumpPair& bp, double beta) {
  LoopElement e{beta, bp.f.size(), {}};
  e.coeffs.emplace(1, bp.g.shift(beta));
  e.coeffs.emplace(0, bp.f);
  e.coeffs.emplace(-1, bp.g);
  return e;
}

constexpr double kMinRampSamples = 16.0;

PrBuild pr_build(std::int64_t r, std::int64_t s, const ThetaParam& theta, bool flip_symmetric, const PrOptions& opts) {
  if (r < 1) throw NumericError("alpha-out-of-range", "r must be at least 1");
  const Real exact = theta.numeric() * r + s;
  double alpha = static_cast<double>(exact);
  if (flip_symmetric) {
    if (!(exact > Real(0.5) && exact < Real(1))) {
      throw NumericError("alpha-out-of-range", "flip-symmetric builds need r theta + s in (1/2, 1), got " +
                                                   std::to_string(alpha));
    }
  } else {
    alpha = static_cast<double>(exact - floor(exact));
  }
  const double beta = alpha;  // rt + s and frac(r theta) agree mod 1
  const double eps = opts.epsilon.value_or(std::min(alpha, 1.0 - alpha) / 4.0);
  std::optional<double> center = opts.plateau_center;
  if (!center && flip_symmetric) center = 0.5;

  PrBuild out;
  out.r = r;
  out.s = s;
  out.alpha = alpha;
  out.epsilon = eps;
  out.flip_symmetric = flip_symmetric;
  for (std::size_t n = opts.grid; n <= opts.max_grid; n *= 4) {
    // A ramp narrower than a few samples aliases to a step that is idempotent on the grid yet has the wrong trace.
    if (eps * static_cast<double>(n) < kMinRampSamples) continue;
    out.e = pr_from_bumps(bump_pair(alpha, eps, n, center), beta);
    const LoopElement e2 = loop_mul(out.e, out.e);
    out.idempotent_residual = loop_norm(loop_sub(e2, out.e));
    const double trace_err = std::abs(out.e.find(0)->mean().real() - alpha);
    if (out.idempotent_residual <= opts.idempotent_tol && trace_err <= opts.idempotent_tol) {
      out.selfadjoint_residual = loop_norm(loop_sub(loop_star(out.e), out.e));
      if (flip_symmetric) out.flip_residual = loop_norm(loop_sub(flip_apply(out.e), out.e));
      return out;
    }
  }
  throw NumericError("residual-exceeded", "idempotent or trace residual above tolerance up to grid " +
                                              std::to_string(opts.max_grid) + " (epsilon " + std::to_string(eps) + ")");
}

LoopInvariants loop_invariants(const LoopElement& e, const ThetaParam& theta, std::int64_t r) {
  const Real half_rt = theta.numeric() * r / 2;
  const double x = static_cast<double>(half_rt - floor(half_rt));  // r theta / 2 mod 1
  std::array<Complex, 4> phi{};
  for (const auto& [k, f] : e.coeffs) {
    const std::vector<Complex> c = f.fourier();
    const std::size_t n = c.size();
    const int j = static_cast<int>(((k % 2) + 2) % 2);
    for (std::size_t idx = 0; idx < n; ++idx) {
      const std::int64_t m = freq(idx, n);
      const int i = static_cast<int>((((r * m) % 2) + 2) % 2);
      const double phase = frac(-x * static_cast<double>(m) * static_cast<double>(k));
      phi[2 * i + j] += c[idx] * std::polar(1.0, kTwoPi * phase);
    }
  }
  LoopInvariants out;
  const CircleFunction* f0 = e.find(0);
  out.tau = quarter_round(f0 ? f0->mean() : Complex{});
  for (std::size_t q = 0; q < 4; ++q) out.phi[q] = quarter_round(phi[q]);
  return out;
}

}  // namespace rotalg

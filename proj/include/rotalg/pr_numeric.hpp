#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rotalg/element.hpp"
#include "rotalg/theta.hpp"

namespace rotalg {

using Complex = std::complex<double>;

class NumericError : public std::runtime_error {
 public:
  /// code is one of grid-mismatch, invalid-epsilon, alpha-out-of-range, residual-exceeded, invalid-grid.
  NumericError(std::string code, const std::string& what) : std::runtime_error(what), code_(std::move(code)) {}
  [[nodiscard]] const std::string& code() const { return code_; }

 private:
  std::string code_;
};

/// Samples of a function on the circle R/Z at t_j = j/N, N a power of two >= 256.
/// Values between grid points are defined by trigonometric interpolation through
/// the discrete Fourier coefficients, which is what shift() uses.
class CircleFunction {
 public:
  CircleFunction() = default;
  explicit CircleFunction(std::vector<Complex> samples);
  static CircleFunction zero(std::size_t n);
  static CircleFunction sample(std::size_t n, const std::function<Complex(double)>& fn);

  [[nodiscard]] std::size_t size() const { return samples_.size(); }
  [[nodiscard]] const std::vector<Complex>& samples() const { return samples_; }
  Complex& operator[](std::size_t j) { return samples_[j]; }
  const Complex& operator[](std::size_t j) const { return samples_[j]; }

  /// t -> f(t + delta).
  [[nodiscard]] CircleFunction shift(double delta) const;
  /// t -> f(-t).
  [[nodiscard]] CircleFunction reflect() const;
  [[nodiscard]] CircleFunction conj() const;
  /// Fourier coefficients c_m for m = -N/2 .. N/2 - 1, stored at index m mod N.
  [[nodiscard]] std::vector<Complex> fourier() const;
  [[nodiscard]] double sup_norm() const;
  /// Mean value, i.e. the integral over the circle.
  [[nodiscard]] Complex mean() const;

  friend CircleFunction operator+(const CircleFunction& a, const CircleFunction& b);
  friend CircleFunction operator-(const CircleFunction& a, const CircleFunction& b);
  friend CircleFunction operator*(const CircleFunction& a, const CircleFunction& b);
  friend CircleFunction operator*(Complex s, const CircleFunction& a);

 private:
  std::vector<Complex> samples_;
};

/// sum_k f_k(W) V^k with W = U^r, written with the function left of the V power.
/// Multiplication uses V f(W) = f(. + beta)(W) V with beta = frac(r theta).
struct LoopElement {
  double beta = 0.0;
  std::size_t grid = 0;
  std::map<std::int64_t, CircleFunction> coeffs;

  [[nodiscard]] const CircleFunction* find(std::int64_t k) const;
};

/// (f V^a)(h V^b) = f h(. + a beta) V^{a+b}.
LoopElement loop_mul(const LoopElement& x, const LoopElement& y);
/// (f V^a)* = conj(f)(. - a beta) V^{-a}.
LoopElement loop_star(const LoopElement& x);
LoopElement loop_add(const LoopElement& x, const LoopElement& y);
LoopElement loop_sub(const LoopElement& x, const LoopElement& y);
/// sum_k sup |f_k|.
double loop_norm(const LoopElement& x);
/// Flip U -> U^-1, V -> V^-1: f(W) V^k -> f(W^-1) V^-k, so the new coefficient at -k is t -> f_k(-t).
LoopElement flip_apply(const LoopElement& x);

/// Embeds a finite element whose U-exponents are multiples of r, evaluating phases at theta.
/// Throws std::invalid_argument for exponents not divisible by r.
LoopElement loop_from_element(const Element& x, std::int64_t r, const ThetaParam& theta, std::size_t grid);

struct BumpPair {
  CircleFunction f;
  CircleFunction g;
};

/// f ramps up on [0, eps], equals 1 on [eps, alpha], ramps down on [alpha, alpha + eps];
/// g = sqrt(f - f^2) on the down ramp. The ramp is C-infinity so FFT shifts stay accurate.
/// `center` translates both so the plateau midpoint sits at that point of the circle.
BumpPair bump_pair(double alpha, double eps, std::size_t grid, std::optional<double> center = std::nullopt);

/// Sup-norm residuals of g(t)g(t+alpha), g(t)(f(t)+f(t-alpha)-1) and f-f^2-g^2-g(t+alpha)^2.
std::array<double, 3> bump_identity_residuals(const BumpPair& bp, double alpha);

/// e = g(. + beta) V + f + g V^-1.
LoopElement pr_from_bumps(const BumpPair& bp, double beta);

struct PrOptions {
  std::size_t grid = 4096;
  std::size_t max_grid = 65536;
  std::optional<double> epsilon;        ///< default min(alpha, 1 - alpha) / 4
  std::optional<double> plateau_center;  ///< overrides the centering implied by flip_symmetric
  double idempotent_tol = 1e-8;
};

struct PrBuild {
  LoopElement e;
  std::int64_t r = 0, s = 0;
  double alpha = 0.0;
  double epsilon = 0.0;
  bool flip_symmetric = false;
  double idempotent_residual = 0.0;
  double selfadjoint_residual = 0.0;
  std::optional<double> flip_residual;
};

/// alpha = r theta + s. Flip-symmetric builds need alpha in (1/2, 1) and centre the
/// plateau at 1/2; plain builds take alpha mod 1 and leave the ramp starting at 0.
/// The grid is refined x4 until the idempotent residual passes or max_grid is hit.
PrBuild pr_build(std::int64_t r, std::int64_t s, const ThetaParam& theta, bool flip_symmetric,
                 const PrOptions& opts = {});

struct InvariantValue {
  Complex raw;
  std::optional<double> rounded;  ///< nearest quarter when within 1e-6
};

struct LoopInvariants {
  InvariantValue tau;
  std::array<InvariantValue, 4> phi;  ///< phi00, phi01, phi10, phi11
};

/// tau = mean of f_0; phi_ij = sum over k = j, rm = i (mod 2) of c_{k,m} e(-theta r m k / 2).
LoopInvariants loop_invariants(const LoopElement& e, const ThetaParam& theta, std::int64_t r);

}  // namespace rotalg

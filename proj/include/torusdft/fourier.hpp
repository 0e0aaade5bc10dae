#pragma once

// Fourier representation of functions and distributions on the torus
// T = R/(2*pi*Z).
//
// Basis convention (used by every formula in this library):
//   e_m(x) = (2*pi)^{-1/2} * exp(i*m*x),  m in Z,
// which is orthonormal in L^2(T). A band-limited function with cutoff K
// is f = sum_{|m|<=K} fhat_m e_m. A real-valued f satisfies
// fhat_{-m} = conj(fhat_m).

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace torusdft {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kInvSqrt2Pi = 0.39894228040143267793994605993438;
inline constexpr double kSqrt2Pi = 2.5066282746310005024157652848110;

// Absolute tolerance for realness checks on coefficients.
inline constexpr double kRealnessTol = 1e-12;

// Grid size for nonlinear operations on band-limited data: 4*(2*band+1)
// rounded up to a power of two. Large enough that products of two
// band-limited factors (and cubic-type expressions) are alias-free.
int oversampled_grid_size(int band);

// Band-limited element of H^1(T), stored as coefficients over m = -K..K.
class PeriodicFunction {
 public:
  PeriodicFunction() : cutoff_(0), coeffs_(1, Complex(0, 0)) {}
  explicit PeriodicFunction(int cutoff);
  PeriodicFunction(int cutoff, std::vector<Complex> coeffs);

  int cutoff() const { return cutoff_; }
  int size() const { return 2 * cutoff_ + 1; }

  // Coefficient of e_m; zero outside the band.
  Complex coeff(int m) const {
    if (m < -cutoff_ || m > cutoff_) return Complex(0, 0);
    return coeffs_[static_cast<size_t>(m + cutoff_)];
  }
  void set_coeff(int m, Complex value);

  // Raw storage in m = -K..K order.
  const std::vector<Complex>& coeffs() const { return coeffs_; }

  bool is_real(double tol = kRealnessTol) const;
  double max_abs_coeff() const;

  // Direct evaluation at an arbitrary point (O(K) per call).
  Complex evaluate(double x) const;

  // Derivative d/dx, same cutoff (coefficients scaled by i*m).
  PeriodicFunction derivative() const;

  // Complex conjugate of the function (coefficients conj + reversal).
  PeriodicFunction conjugated() const;

  // Same function viewed at a larger (or equal) cutoff, zero padded.
  PeriodicFunction padded(int new_cutoff) const;

  PeriodicFunction& operator+=(const PeriodicFunction& other);
  PeriodicFunction& operator*=(Complex scalar);

 private:
  int cutoff_;
  std::vector<Complex> coeffs_;
};

PeriodicFunction operator+(PeriodicFunction a, const PeriodicFunction& b);
PeriodicFunction operator-(const PeriodicFunction& a, const PeriodicFunction& b);
PeriodicFunction operator*(Complex scalar, PeriodicFunction f);

// Uniform sampling of the torus: n points x_i = 2*pi*i/n.
struct Grid {
  int n = 0;
  std::vector<Complex> values;

  Grid() = default;
  Grid(int n_points, std::vector<Complex> vals);
  double point(int i) const { return kTwoPi * static_cast<double>(i) / n; }
};

// Element of the admissible potential space: a distribution in H^{-1}(T)
// represented by dual coefficients d_m = v(e_m), |m| <= Kv, plus a finite
// list of weighted Dirac deltas kept symbolic. Deltas are folded into
// dual coefficients only at a consumer-stated cutoff, since their
// coefficients do not decay.
struct DeltaTerm {
  double x0 = 0.0;   // position in [0, 2*pi)
  double alpha = 0.0;
};

class Potential {
 public:
  Potential() : cutoff_(0), dual_(1, Complex(0, 0)), fourier_exact_(true) {}
  Potential(int cutoff, std::vector<Complex> dual_coeffs,
            std::vector<DeltaTerm> deltas, bool fourier_exact = true);

  // v(f) = integral conj(g) f for a band-limited g, i.e. d_m = conj(ghat_m).
  static Potential embed(const PeriodicFunction& g);
  // The constant functional c*1: d_0 = c*sqrt(2*pi).
  static Potential constant(double c);
  static Potential delta(double x0, double alpha);

  int cutoff() const { return cutoff_; }
  Complex dual_coeff(int m) const;
  const std::vector<Complex>& dual_coeffs() const { return dual_; }
  const std::vector<DeltaTerm>& deltas() const { return deltas_; }

  // True when the smooth part is exactly band-limited (coefficients
  // beyond the cutoff are genuinely zero, not merely unknown). False for
  // truncations of non-band-limited data, e.g. recovered potentials.
  bool fourier_exact() const { return fourier_exact_; }

  // Membership in the real potential class: d_{-m} = conj(d_m).
  // Delta weights are real by construction.
  bool is_real(double tol = kRealnessTol) const;
  double realness_defect() const;

  bool has_deltas() const { return !deltas_.empty(); }
  bool fourier_part_is_zero() const;

  // Smooth-part coefficient with cutoff semantics: exact zero beyond the
  // band if fourier_exact(), otherwise unavailable (throws).
  Complex dual_coeff_checked(int m) const;

  // Deltas folded in at cutoff M: pure-Fourier potential with
  // d_m += alpha * (2*pi)^{-1/2} * exp(i*m*x0). The result is a
  // truncation whenever deltas were present.
  Potential folded(int M) const;

  Potential& operator+=(const Potential& other);
  Potential& operator*=(double scalar);

 private:
  int cutoff_;
  std::vector<Complex> dual_;   // d_m, m = -cutoff..cutoff
  std::vector<DeltaTerm> deltas_;
  bool fourier_exact_;
};

Potential operator+(Potential a, const Potential& b);
Potential operator-(const Potential& a, const Potential& b);
Potential operator*(double scalar, Potential v);

// --- operations ---

// values_i = f(x_i) on the n-point grid; exact for n >= 2K+1.
Grid grid_sample(const PeriodicFunction& f, int n);

// fhat_m = (2*pi/n) sum_i values_i conj(e_m(x_i)); exact inverse of
// grid_sample when the grid carries a trig polynomial of degree <= K
// sampled on n > 2*degree points. Aliasing otherwise (documented, not
// trapped).
PeriodicFunction grid_to_coeffs(const Grid& g, int K);

double l2_norm(const PeriodicFunction& f);
double h1_norm(const PeriodicFunction& f);

// max |f| over the n-point grid (lower bound of the sup norm; callers
// should pass n >= 8K).
double linf_norm(const PeriodicFunction& f, int n);

// L^2 inner product <f, g> = sum conj(fhat_m) ghat_m.
Complex inner_product(const PeriodicFunction& f, const PeriodicFunction& g);

// H^{-1} operator norm of the cutoff-M truncation:
// (sum_{|m|<=M} |d_m|^2 / (1+m^2))^{1/2}. Exact for the truncated
// functional; pure-delta potentials converge as M grows.
double dual_norm(const Potential& v, int M);

// Distributional pairing v(f) = sum fhat_m d_m + sum alpha f(x0).
// Throws if f carries modes beyond the potential's known band.
Complex apply_potential(const Potential& v, const PeriodicFunction& f);

// Exact product via an alias-free grid, returned at cutoff K_f + K_g.
PeriodicFunction pointwise_multiply(const PeriodicFunction& f,
                                    const PeriodicFunction& g);

}  // namespace torusdft

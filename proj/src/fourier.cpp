#include "torusdft/fourier.hpp"

#include <algorithm>
#include <cmath>

namespace torusdft {

namespace {

// Table of the n-th roots of unity; index k gives exp(i*2*pi*k/n).
// Phase factors exp(i*m*x_j) = table[(m*j) mod n] come out exactly
// consistent between forward and inverse transforms this way.
std::vector<Complex> unit_roots(int n) {
  std::vector<Complex> w(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    w[static_cast<size_t>(k)] = std::polar(1.0, kTwoPi * k / n);
  }
  return w;
}

int64_t pos_mod(int64_t a, int64_t n) {
  int64_t r = a % n;
  return r < 0 ? r + n : r;
}

}  // namespace

int oversampled_grid_size(int band) {
  if (band < 0) throw std::invalid_argument("negative band limit");
  int target = 4 * (2 * band + 1);
  int n = 1;
  while (n < target) n *= 2;
  return n;
}

PeriodicFunction::PeriodicFunction(int cutoff)
    : cutoff_(cutoff), coeffs_(static_cast<size_t>(2 * cutoff + 1), Complex(0, 0)) {
  if (cutoff < 0) throw std::invalid_argument("negative cutoff");
}

PeriodicFunction::PeriodicFunction(int cutoff, std::vector<Complex> coeffs)
    : cutoff_(cutoff), coeffs_(std::move(coeffs)) {
  if (cutoff < 0) throw std::invalid_argument("negative cutoff");
  if (coeffs_.size() != static_cast<size_t>(2 * cutoff + 1)) {
    throw std::invalid_argument("coefficient array must have length 2K+1");
  }
}

void PeriodicFunction::set_coeff(int m, Complex value) {
  if (m < -cutoff_ || m > cutoff_) {
    throw std::out_of_range("mode index outside band");
  }
  coeffs_[static_cast<size_t>(m + cutoff_)] = value;
}

bool PeriodicFunction::is_real(double tol) const {
  for (int m = 0; m <= cutoff_; ++m) {
    if (std::abs(coeff(-m) - std::conj(coeff(m))) > tol) return false;
  }
  return true;
}

double PeriodicFunction::max_abs_coeff() const {
  double mx = 0.0;
  for (const Complex& c : coeffs_) mx = std::max(mx, std::abs(c));
  return mx;
}

Complex PeriodicFunction::evaluate(double x) const {
  // Horner-style accumulation in the variable z = exp(i*x):
  // sum_{m=-K}^{K} c_m z^m = z^{-K} * sum_{j=0}^{2K} c_{j-K} z^j.
  Complex z = std::polar(1.0, x);
  Complex acc(0, 0);
  for (size_t j = coeffs_.size(); j-- > 0;) {
    acc = acc * z + coeffs_[j];
  }
  acc *= std::polar(1.0, -static_cast<double>(cutoff_) * x);
  return kInvSqrt2Pi * acc;
}

PeriodicFunction PeriodicFunction::derivative() const {
  PeriodicFunction d(cutoff_);
  for (int m = -cutoff_; m <= cutoff_; ++m) {
    d.set_coeff(m, Complex(0, m) * coeff(m));
  }
  return d;
}

PeriodicFunction PeriodicFunction::conjugated() const {
  PeriodicFunction c(cutoff_);
  for (int m = -cutoff_; m <= cutoff_; ++m) {
    c.set_coeff(m, std::conj(coeff(-m)));
  }
  return c;
}

PeriodicFunction PeriodicFunction::padded(int new_cutoff) const {
  if (new_cutoff < cutoff_) throw std::invalid_argument("padded: smaller cutoff");
  PeriodicFunction p(new_cutoff);
  for (int m = -cutoff_; m <= cutoff_; ++m) p.set_coeff(m, coeff(m));
  return p;
}

PeriodicFunction& PeriodicFunction::operator+=(const PeriodicFunction& other) {
  if (other.cutoff_ > cutoff_) *this = padded(other.cutoff_);
  for (int m = -other.cutoff_; m <= other.cutoff_; ++m) {
    set_coeff(m, coeff(m) + other.coeff(m));
  }
  return *this;
}

PeriodicFunction& PeriodicFunction::operator*=(Complex scalar) {
  for (Complex& c : coeffs_) c *= scalar;
  return *this;
}

PeriodicFunction operator+(PeriodicFunction a, const PeriodicFunction& b) {
  a += b;
  return a;
}

PeriodicFunction operator-(const PeriodicFunction& a, const PeriodicFunction& b) {
  PeriodicFunction r = a;
  PeriodicFunction nb = b;
  nb *= Complex(-1, 0);
  r += nb;
  return r;
}

PeriodicFunction operator*(Complex scalar, PeriodicFunction f) {
  f *= scalar;
  return f;
}

Grid::Grid(int n_points, std::vector<Complex> vals)
    : n(n_points), values(std::move(vals)) {
  if (n < 2) throw std::invalid_argument("grid needs at least 2 points");
  if (values.size() != static_cast<size_t>(n)) {
    throw std::invalid_argument("grid value count mismatch");
  }
}

Potential::Potential(int cutoff, std::vector<Complex> dual_coeffs,
                     std::vector<DeltaTerm> deltas, bool fourier_exact)
    : cutoff_(cutoff),
      dual_(std::move(dual_coeffs)),
      deltas_(std::move(deltas)),
      fourier_exact_(fourier_exact) {
  if (cutoff < 0) throw std::invalid_argument("negative cutoff");
  if (dual_.size() != static_cast<size_t>(2 * cutoff + 1)) {
    throw std::invalid_argument("dual coefficient array must have length 2K+1");
  }
  for (const DeltaTerm& d : deltas_) {
    if (!(d.x0 >= 0.0 && d.x0 < kTwoPi)) {
      throw std::invalid_argument("delta position must lie in [0, 2*pi)");
    }
  }
}

Potential Potential::embed(const PeriodicFunction& g) {
  std::vector<Complex> d(static_cast<size_t>(g.size()));
  for (int m = -g.cutoff(); m <= g.cutoff(); ++m) {
    d[static_cast<size_t>(m + g.cutoff())] = std::conj(g.coeff(m));
  }
  return Potential(g.cutoff(), std::move(d), {}, true);
}

Potential Potential::constant(double c) {
  return Potential(0, {Complex(c * kSqrt2Pi, 0)}, {}, true);
}

Potential Potential::delta(double x0, double alpha) {
  return Potential(0, {Complex(0, 0)}, {DeltaTerm{x0, alpha}}, true);
}

Complex Potential::dual_coeff(int m) const {
  if (m < -cutoff_ || m > cutoff_) return Complex(0, 0);
  return dual_[static_cast<size_t>(m + cutoff_)];
}

bool Potential::is_real(double tol) const { return realness_defect() <= tol; }

double Potential::realness_defect() const {
  double defect = 0.0;
  for (int m = 0; m <= cutoff_; ++m) {
    defect = std::max(defect, std::abs(dual_coeff(-m) - std::conj(dual_coeff(m))));
  }
  return defect;
}

bool Potential::fourier_part_is_zero() const {
  for (const Complex& c : dual_) {
    if (c != Complex(0, 0)) return false;
  }
  return true;
}

Complex Potential::dual_coeff_checked(int m) const {
  if (m >= -cutoff_ && m <= cutoff_) return dual_coeff(m);
  if (fourier_exact_) return Complex(0, 0);
  throw std::domain_error(
      "cutoff mismatch: dual coefficient |m|=" + std::to_string(std::abs(m)) +
      " requested beyond the known band Kv=" + std::to_string(cutoff_) +
      " of a truncated potential");
}

Potential Potential::folded(int M) const {
  std::vector<Complex> d(static_cast<size_t>(2 * M + 1), Complex(0, 0));
  for (int m = -M; m <= M; ++m) {
    d[static_cast<size_t>(m + M)] = dual_coeff_checked(m);
  }
  for (const DeltaTerm& dt : deltas_) {
    for (int m = -M; m <= M; ++m) {
      d[static_cast<size_t>(m + M)] +=
          dt.alpha * kInvSqrt2Pi * std::polar(1.0, m * dt.x0);
    }
  }
  bool exact = fourier_exact_ && deltas_.empty();
  return Potential(M, std::move(d), {}, exact);
}

Potential& Potential::operator+=(const Potential& other) {
  int K = std::max(cutoff_, other.cutoff_);
  std::vector<Complex> d(static_cast<size_t>(2 * K + 1));
  for (int m = -K; m <= K; ++m) {
    d[static_cast<size_t>(m + K)] =
        dual_coeff_checked(m) + other.dual_coeff_checked(m);
  }
  std::vector<DeltaTerm> ds = deltas_;
  ds.insert(ds.end(), other.deltas_.begin(), other.deltas_.end());
  *this = Potential(K, std::move(d), std::move(ds),
                    fourier_exact_ && other.fourier_exact_);
  return *this;
}

Potential& Potential::operator*=(double scalar) {
  for (Complex& c : dual_) c *= scalar;
  for (DeltaTerm& d : deltas_) d.alpha *= scalar;
  return *this;
}

Potential operator+(Potential a, const Potential& b) {
  a += b;
  return a;
}

Potential operator-(const Potential& a, const Potential& b) {
  Potential nb = b;
  nb *= -1.0;
  nb += a;
  return nb;
}

Potential operator*(double scalar, Potential v) {
  v *= scalar;
  return v;
}

Grid grid_sample(const PeriodicFunction& f, int n) {
  if (n < 2 * f.cutoff() + 1) {
    throw std::invalid_argument("grid_sample: n < 2K+1 undersamples the band");
  }
  const std::vector<Complex> w = unit_roots(n);
  const int K = f.cutoff();
  std::vector<Complex> vals(static_cast<size_t>(n), Complex(0, 0));
  for (int i = 0; i < n; ++i) {
    Complex acc(0, 0);
    for (int m = -K; m <= K; ++m) {
      acc += f.coeff(m) * w[static_cast<size_t>(pos_mod(
                 static_cast<int64_t>(m) * i, n))];
    }
    vals[static_cast<size_t>(i)] = kInvSqrt2Pi * acc;
  }
  return Grid(n, std::move(vals));
}

PeriodicFunction grid_to_coeffs(const Grid& g, int K) {
  if (2 * K + 1 > g.n) {
    throw std::invalid_argument("grid_to_coeffs: 2K+1 exceeds grid size");
  }
  const std::vector<Complex> w = unit_roots(g.n);
  PeriodicFunction f(K);
  const double scale = kTwoPi / g.n * kInvSqrt2Pi;
  for (int m = -K; m <= K; ++m) {
    Complex acc(0, 0);
    for (int i = 0; i < g.n; ++i) {
      acc += g.values[static_cast<size_t>(i)] *
             w[static_cast<size_t>(pos_mod(-static_cast<int64_t>(m) * i, g.n))];
    }
    f.set_coeff(m, scale * acc);
  }
  return f;
}

double l2_norm(const PeriodicFunction& f) {
  double s = 0.0;
  for (const Complex& c : f.coeffs()) s += std::norm(c);
  return std::sqrt(s);
}

double h1_norm(const PeriodicFunction& f) {
  double s = 0.0;
  for (int m = -f.cutoff(); m <= f.cutoff(); ++m) {
    s += (1.0 + static_cast<double>(m) * m) * std::norm(f.coeff(m));
  }
  return std::sqrt(s);
}

double linf_norm(const PeriodicFunction& f, int n) {
  Grid g = grid_sample(f, n);
  double mx = 0.0;
  for (const Complex& v : g.values) mx = std::max(mx, std::abs(v));
  return mx;
}

Complex inner_product(const PeriodicFunction& f, const PeriodicFunction& g) {
  int K = std::min(f.cutoff(), g.cutoff());
  Complex acc(0, 0);
  for (int m = -K; m <= K; ++m) acc += std::conj(f.coeff(m)) * g.coeff(m);
  return acc;
}

double dual_norm(const Potential& v, int M) {
  Potential folded = v.folded(M);
  double s = 0.0;
  for (int m = -M; m <= M; ++m) {
    s += std::norm(folded.dual_coeff(m)) / (1.0 + static_cast<double>(m) * m);
  }
  return std::sqrt(s);
}

Complex apply_potential(const Potential& v, const PeriodicFunction& f) {
  Complex acc(0, 0);
  for (int m = -f.cutoff(); m <= f.cutoff(); ++m) {
    Complex fm = f.coeff(m);
    if (fm == Complex(0, 0)) continue;
    acc += fm * v.dual_coeff_checked(m);
  }
  for (const DeltaTerm& d : v.deltas()) {
    acc += d.alpha * f.evaluate(d.x0);
  }
  return acc;
}

PeriodicFunction pointwise_multiply(const PeriodicFunction& f,
                                    const PeriodicFunction& g) {
  const int K = f.cutoff() + g.cutoff();
  const int n = oversampled_grid_size(K);
  Grid gf = grid_sample(f, n);
  Grid gg = grid_sample(g, n);
  std::vector<Complex> prod(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    prod[static_cast<size_t>(i)] =
        gf.values[static_cast<size_t>(i)] * gg.values[static_cast<size_t>(i)];
  }
  return grid_to_coeffs(Grid(n, std::move(prod)), K);
}

}  // namespace torusdft

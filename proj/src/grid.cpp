#include "kbk/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace kbk {

namespace {

// FFTW planning is not thread-safe; execution via fftw_execute_dft on
// per-call buffers is. One mutex serializes plan creation/destruction.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

std::vector<char> dealias_mask(int n, double fraction) {
  std::vector<char> keep(n);
  for (int j = 0; j < n; ++j) {
    int m = j <= n / 2 ? j : j - n;
    keep[j] = std::abs(m) <= fraction * n / 2 ? 1 : 0;
  }
  return keep;
}

struct Grid::Impl {
  double L;
  int N;
  real_field x, k;
  double w;
  fftw_plan fwd, bwd;

  Impl(double L_, int N_) : L(L_), N(N_) {
    x.resize(N);
    k.resize(N);
    const double pi = M_PI;
    for (int j = 0; j < N; ++j) {
      x[j] = L * (-pi + 2 * pi * j / N);
      int m = j < N / 2 ? j : j - N;
      k[j] = m / L;
    }
    w = 2 * pi * L / N;

    spectrum buf(N);
    auto* p = reinterpret_cast<fftw_complex*>(buf.data());
    std::lock_guard<std::mutex> lock(planner_mutex());
    fwd = fftw_plan_dft_1d(N, p, p, FFTW_FORWARD,
                           FFTW_ESTIMATE | FFTW_UNALIGNED);
    bwd = fftw_plan_dft_1d(N, p, p, FFTW_BACKWARD,
                           FFTW_ESTIMATE | FFTW_UNALIGNED);
  }

  ~Impl() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
  }

  Impl(const Impl&) = delete;
  Impl& operator=(const Impl&) = delete;
};

Grid::Grid(double L, int N) {
  if (!(L > 0)) throw std::invalid_argument("grid: L must be positive");
  if (!power_of_two(N) || N < 4)
    throw std::invalid_argument("grid: N must be a power of two >= 4");
  impl_ = std::make_shared<const Impl>(L, N);
}

double Grid::L() const { return impl_->L; }
int Grid::N() const { return impl_->N; }
const real_field& Grid::nodes() const { return impl_->x; }
const real_field& Grid::wavenumbers() const { return impl_->k; }
double Grid::quad_weight() const { return impl_->w; }
double Grid::dx() const { return 2 * M_PI * impl_->L / impl_->N; }

spectrum Grid::forward(const real_field& f) const {
  if ((int)f.size() != impl_->N)
    throw std::invalid_argument("forward: field length does not match grid");
  spectrum s(impl_->N);
  for (int j = 0; j < impl_->N; ++j) s[j] = f[j];
  auto* p = reinterpret_cast<fftw_complex*>(s.data());
  fftw_execute_dft(impl_->fwd, p, p);
  return s;
}

real_field Grid::inverse(const spectrum& s) const {
  if ((int)s.size() != impl_->N)
    throw std::invalid_argument("inverse: spectrum length does not match grid");
  spectrum tmp = s;
  auto* p = reinterpret_cast<fftw_complex*>(tmp.data());
  fftw_execute_dft(impl_->bwd, p, p);
  real_field f(impl_->N);
  for (int j = 0; j < impl_->N; ++j) f[j] = tmp[j].real() / impl_->N;
  return f;
}

spectrum Grid::derivative(spectrum s, int order) const {
  if ((int)s.size() != impl_->N)
    throw std::invalid_argument("derivative: spectrum length mismatch");
  if (order < 1 || order > 4)
    throw std::invalid_argument("derivative: order must be in 1..4");
  const std::complex<double> i(0, 1);
  for (int j = 0; j < impl_->N; ++j)
    s[j] *= std::pow(i * impl_->k[j], order);
  if (order % 2 == 1) s[impl_->N / 2] = 0.0;
  return s;
}

double Grid::integrate(const real_field& f) const {
  if ((int)f.size() != impl_->N)
    throw std::invalid_argument("integrate: field length mismatch");
  double sum = 0;
  for (double fj : f) sum += fj;
  return impl_->w * sum;
}

std::vector<char> Grid::dealias_mask(double fraction) const {
  return kbk::dealias_mask(impl_->N, fraction);
}

}  // namespace kbk

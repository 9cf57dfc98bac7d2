// Periodic pseudospectral grid: nodes, wavenumbers, FFT wrappers, spectral
// differentiation and quadrature on x in L*[-pi, pi).
#ifndef KBK_GRID_HPP
#define KBK_GRID_HPP

#include <complex>
#include <memory>
#include <vector>

namespace kbk {

using real_field = std::vector<double>;
using spectrum = std::vector<std::complex<double>>;

// True for mode indices with |m| <= fraction*n/2 (modes in transform-native
// order 0..n/2-1, -n/2..-1). fraction=1 keeps everything.
std::vector<char> dealias_mask(int n, double fraction);

class Grid {
public:
  // Domain x in L*[-pi, pi), N equispaced nodes, N a power of two >= 4.
  // Throws std::invalid_argument otherwise.
  Grid(double L, int N);

  double L() const;
  int N() const;
  const real_field& nodes() const;        // x_j = L*(-pi + 2*pi*j/N)
  const real_field& wavenumbers() const;  // m/L, transform-native order
  double quad_weight() const;             // 2*pi*L/N
  double dx() const;                      // node spacing

  // Unnormalized forward DFT (mode m of e^{imx/L} has modulus N) and its
  // 1/N-normalized inverse; the inverse drops the imaginary residue.
  spectrum forward(const real_field& f) const;
  real_field inverse(const spectrum& s) const;

  // Multiply mode m by (i*k_m)^order, order in 1..4. Odd orders zero the
  // Nyquist mode, which has no consistent odd derivative on a real grid.
  spectrum derivative(spectrum s, int order) const;

  // Periodic trapezoid rule: quad_weight * sum(f).
  double integrate(const real_field& f) const;

  std::vector<char> dealias_mask(double fraction) const;

private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

}  // namespace kbk

#endif

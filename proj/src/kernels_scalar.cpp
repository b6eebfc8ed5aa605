#include "liedeg/kernels.hpp"

#include <cmath>

namespace liedeg::kernels::scalar {

std::complex<double> weighted_cdot(const double* w, CSpan a, CSpan b) {
  // four interleaved partial sums, same association as the vector path
  double sr[4] = {0, 0, 0, 0};
  double si[4] = {0, 0, 0, 0};
  std::size_t i = 0;
  for (; i + 4 <= a.n; i += 4) {
    for (int l = 0; l < 4; ++l) {
      const std::size_t k = i + l;
      const double wk = w ? w[k] : 1.0;
      const double pr = a.re[k] * b.re[k] + a.im[k] * b.im[k];
      const double pi = a.re[k] * b.im[k] - a.im[k] * b.re[k];
      sr[l] += wk * pr;
      si[l] += wk * pi;
    }
  }
  double re = (sr[0] + sr[1]) + (sr[2] + sr[3]);
  double im = (si[0] + si[1]) + (si[2] + si[3]);
  for (; i < a.n; ++i) {
    const double wk = w ? w[i] : 1.0;
    re += wk * (a.re[i] * b.re[i] + a.im[i] * b.im[i]);
    im += wk * (a.re[i] * b.im[i] - a.im[i] * b.re[i]);
  }
  return {re, im};
}

void su2_mul_batch(double* a1r, double* a1i, double* a2r, double* a2i, const double* b1r,
                   const double* b1i, const double* b2r, const double* b2i, std::size_t n) {
  // [[a1, a2], [-conj a2, conj a1]] * [[b1, b2], [-conj b2, conj b1]]
  // first row: (a1 b1 - a2 conj b2, a1 b2 + a2 conj b1)
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = a1r[i], xi = a1i[i], yr = a2r[i], yi = a2i[i];
    const double ur = b1r[i], ui = b1i[i], vr = b2r[i], vi = b2i[i];
    const double c1r = (xr * ur - xi * ui) - (yr * vr + yi * vi);
    const double c1i = (xr * ui + xi * ur) - (yi * vr - yr * vi);
    const double c2r = (xr * vr - xi * vi) + (yr * ur + yi * ui);
    const double c2i = (xr * vi + xi * vr) + (yi * ur - yr * ui);
    a1r[i] = c1r;
    a1i[i] = c1i;
    a2r[i] = c2r;
    a2i[i] = c2i;
  }
}

void phase_advance(double* phases, double shift, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double p = phases[i] + shift;
    p -= std::floor(p);
    if (p >= 1.0) p = 0.0;
    phases[i] = p;
  }
}

}  // namespace liedeg::kernels::scalar

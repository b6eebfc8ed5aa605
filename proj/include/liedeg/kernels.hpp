#pragma once
/**
 * @file kernels.hpp
 * @brief Batched numeric kernels over quadrature nodes / orbit batches.
 *
 * Every kernel has a portable scalar reference in `liedeg::kernels::scalar`
 * and, on x86-64 builds, an AVX2+FMA variant. The public entry points
 * dispatch once at first use via `__builtin_cpu_supports`.
 * Setting LIEDEG_SIMD=scalar in the environment forces the reference path.
 */

#include <complex>
#include <cstddef>
#include <string>

namespace liedeg::kernels {

/// Split-complex view: separate real and imaginary arrays of equal length.
struct CSpan {
  const double* re;
  const double* im;
  std::size_t n;
};

/// sum_i w_i * conj(a_i) * b_i ; w may be null (unit weights).
using WeightedCdotFn = std::complex<double> (*)(const double* w, CSpan a, CSpan b);

/// In-place batched SU(2) product a_i <- a_i * b_i, quaternion pairs (z1, z2)
/// stored as four arrays: re z1, im z1, re z2, im z2.
using Su2MulBatchFn = void (*)(double* a1r, double* a1i, double* a2r, double* a2i,
                               const double* b1r, const double* b1i, const double* b2r,
                               const double* b2i, std::size_t n);

/// phases_i <- frac(phases_i + shift), result in [0,1).
using PhaseAdvanceFn = void (*)(double* phases, double shift, std::size_t n);

namespace scalar {
std::complex<double> weighted_cdot(const double* w, CSpan a, CSpan b);
void su2_mul_batch(double* a1r, double* a1i, double* a2r, double* a2i, const double* b1r,
                   const double* b1i, const double* b2r, const double* b2i, std::size_t n);
void phase_advance(double* phases, double shift, std::size_t n);
}  // namespace scalar

namespace avx2 {
bool compiled();
std::complex<double> weighted_cdot(const double* w, CSpan a, CSpan b);
void su2_mul_batch(double* a1r, double* a1i, double* a2r, double* a2i, const double* b1r,
                   const double* b1i, const double* b2r, const double* b2i, std::size_t n);
void phase_advance(double* phases, double shift, std::size_t n);
}  // namespace avx2

/// Runtime-dispatched entry points.
std::complex<double> weighted_cdot(const double* w, CSpan a, CSpan b);
void su2_mul_batch(double* a1r, double* a1i, double* a2r, double* a2i, const double* b1r,
                   const double* b1i, const double* b2r, const double* b2i, std::size_t n);
void phase_advance(double* phases, double shift, std::size_t n);

/// "avx2" or "scalar"
std::string active_backend();
bool avx2_available();

}  // namespace liedeg::kernels

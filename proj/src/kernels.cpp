#include "liedeg/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace liedeg::kernels {

#ifndef LIEDEG_WITH_AVX2
namespace avx2 {
bool compiled() { return false; }
std::complex<double> weighted_cdot(const double* w, CSpan a, CSpan b) {
  return scalar::weighted_cdot(w, a, b);
}
void su2_mul_batch(double* a1r, double* a1i, double* a2r, double* a2i, const double* b1r,
                   const double* b1i, const double* b2r, const double* b2i, std::size_t n) {
  scalar::su2_mul_batch(a1r, a1i, a2r, a2i, b1r, b1i, b2r, b2i, n);
}
void phase_advance(double* phases, double shift, std::size_t n) {
  scalar::phase_advance(phases, shift, n);
}
}  // namespace avx2
#endif

bool avx2_available() {
#if defined(LIEDEG_WITH_AVX2) && (defined(__x86_64__) || defined(__i386__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

struct Table {
  WeightedCdotFn cdot = scalar::weighted_cdot;
  Su2MulBatchFn su2 = scalar::su2_mul_batch;
  PhaseAdvanceFn phase = scalar::phase_advance;
  const char* name = "scalar";
};

Table make_table() {
  Table t;
  const char* env = std::getenv("LIEDEG_SIMD");
  const bool forced_scalar = env && std::strcmp(env, "scalar") == 0;
  if (!forced_scalar && avx2_available()) {
    t.cdot = avx2::weighted_cdot;
    t.su2 = avx2::su2_mul_batch;
    t.phase = avx2::phase_advance;
    t.name = "avx2";
  }
  return t;
}

const Table& table() {
  static const Table t = make_table();
  return t;
}

}  // namespace

std::complex<double> weighted_cdot(const double* w, CSpan a, CSpan b) {
  return table().cdot(w, a, b);
}

void su2_mul_batch(double* a1r, double* a1i, double* a2r, double* a2i, const double* b1r,
                   const double* b1i, const double* b2r, const double* b2i, std::size_t n) {
  table().su2(a1r, a1i, a2r, a2i, b1r, b1i, b2r, b2i, n);
}

void phase_advance(double* phases, double shift, std::size_t n) {
  table().phase(phases, shift, n);
}

std::string active_backend() { return table().name; }

}  // namespace liedeg::kernels

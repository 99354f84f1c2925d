// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include "te/kernels.hpp"

#include <immintrin.h>

namespace te::kernels::avx2 {

double dot(std::span<const double> a, std::span<const double> b) {
  const double* pa = a.data();
  const double* pb = b.data();
  std::size_t n = a.size();

  // Four independent accumulators hide the FMA latency.
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  __m256d acc2 = _mm256_setzero_pd();
  __m256d acc3 = _mm256_setzero_pd();
  while (n >= 16) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(pa), _mm256_loadu_pd(pb), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(pa + 4), _mm256_loadu_pd(pb + 4), acc1);
    acc2 = _mm256_fmadd_pd(_mm256_loadu_pd(pa + 8), _mm256_loadu_pd(pb + 8), acc2);
    acc3 = _mm256_fmadd_pd(_mm256_loadu_pd(pa + 12), _mm256_loadu_pd(pb + 12), acc3);
    pa += 16;
    pb += 16;
    n -= 16;
  }
  while (n >= 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(pa), _mm256_loadu_pd(pb), acc0);
    pa += 4;
    pb += 4;
    n -= 4;
  }
  const __m256d acc = _mm256_add_pd(_mm256_add_pd(acc0, acc1), _mm256_add_pd(acc2, acc3));
  __m128d half = _mm_add_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
  half = _mm_add_sd(half, _mm_unpackhi_pd(half, half));
  double sum = _mm_cvtsd_f64(half);
  for (std::size_t i = 0; i < n; ++i) {
    sum += pa[i] * pb[i];
  }
  return sum;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  const double* px = x.data();
  double* py = y.data();
  std::size_t n = x.size();
  const __m256d va = _mm256_set1_pd(alpha);
  while (n >= 4) {
    _mm256_storeu_pd(py, _mm256_fmadd_pd(va, _mm256_loadu_pd(px), _mm256_loadu_pd(py)));
    px += 4;
    py += 4;
    n -= 4;
  }
  for (std::size_t i = 0; i < n; ++i) {
    py[i] += alpha * px[i];
  }
}

void horner_step(std::span<std::uint32_t> codes, std::span<const std::int32_t> digits,
                 std::uint32_t radix) {
  std::uint32_t* pc = codes.data();
  const std::int32_t* pd = digits.data();
  std::size_t n = codes.size();
  const __m256i vr = _mm256_set1_epi32(static_cast<int>(radix));
  while (n >= 8) {
    const __m256i c = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(pc));
    const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(pd));
    // mullo keeps the low 32 bits, matching unsigned wraparound.
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(pc),
                        _mm256_add_epi32(_mm256_mullo_epi32(c, vr), d));
    pc += 8;
    pd += 8;
    n -= 8;
  }
  for (std::size_t i = 0; i < n; ++i) {
    pc[i] = pc[i] * radix + static_cast<std::uint32_t>(pd[i]);
  }
}

} // namespace te::kernels::avx2

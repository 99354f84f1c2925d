#pragma once

// Data-parallel inner loops shared by the estimators.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant. The dispatched entry points forward to the backend selected at
// first use: the TE_SIMD environment variable ("scalar" or "avx2") if set,
// otherwise the widest backend the CPU supports.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace te::kernels {

enum class Backend { scalar, avx2 };

std::string_view backend_name(Backend backend);
bool backend_supported(Backend backend);
Backend active_backend();
/// Throws std::invalid_argument if the backend is not supported here.
void set_backend(Backend backend);

/// sum_i a[i] * b[i]. Spans must have equal length.
double dot(std::span<const double> a, std::span<const double> b);

/// y[i] += alpha * x[i].
void axpy(double alpha, std::span<const double> x, std::span<double> y);

/// codes[i] = codes[i] * radix + digits[i]. Wraps modulo 2^32; callers keep
/// the code space below that.
void horner_step(std::span<std::uint32_t> codes, std::span<const std::int32_t> digits,
                 std::uint32_t radix);

namespace scalar {
double dot(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void horner_step(std::span<std::uint32_t> codes, std::span<const std::int32_t> digits,
                 std::uint32_t radix);
} // namespace scalar

#if defined(TE_HAVE_AVX2)
namespace avx2 {
double dot(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void horner_step(std::span<std::uint32_t> codes, std::span<const std::int32_t> digits,
                 std::uint32_t radix);
} // namespace avx2
#endif

} // namespace te::kernels

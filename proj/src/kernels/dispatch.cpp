#include "te/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace te::kernels {

namespace {

struct Table {
  Backend backend;
  double (*dot)(std::span<const double>, std::span<const double>);
  void (*axpy)(double, std::span<const double>, std::span<double>);
  void (*horner_step)(std::span<std::uint32_t>, std::span<const std::int32_t>, std::uint32_t);
};

constexpr Table kScalar{Backend::scalar, &scalar::dot, &scalar::axpy, &scalar::horner_step};
#if defined(TE_HAVE_AVX2)
constexpr Table kAvx2{Backend::avx2, &avx2::dot, &avx2::axpy, &avx2::horner_step};
#endif

const Table* table_for(Backend backend) {
  switch (backend) {
  case Backend::scalar:
    return &kScalar;
  case Backend::avx2:
#if defined(TE_HAVE_AVX2)
    return &kAvx2;
#else
    return nullptr;
#endif
  }
  return nullptr;
}

const Table* initial_table() {
  if (const char* env = std::getenv("TE_SIMD")) {
    const std::string requested(env);
    if (requested == "scalar") return &kScalar;
    if (requested == "avx2" && backend_supported(Backend::avx2)) return table_for(Backend::avx2);
  }
  if (backend_supported(Backend::avx2)) return table_for(Backend::avx2);
  return &kScalar;
}

std::atomic<const Table*>& current() {
  static std::atomic<const Table*> table{initial_table()};
  return table;
}

} // namespace

std::string_view backend_name(Backend backend) {
  switch (backend) {
  case Backend::scalar:
    return "scalar";
  case Backend::avx2:
    return "avx2";
  }
  return "unknown";
}

bool backend_supported(Backend backend) {
  switch (backend) {
  case Backend::scalar:
    return true;
  case Backend::avx2:
#if defined(TE_HAVE_AVX2)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
  }
  return false;
}

Backend active_backend() { return current().load(std::memory_order_acquire)->backend; }

void set_backend(Backend backend) {
  if (!backend_supported(backend)) {
    throw std::invalid_argument("SIMD backend '" + std::string(backend_name(backend)) +
                                "' is not available on this machine");
  }
  current().store(table_for(backend), std::memory_order_release);
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("dot: length mismatch");
  }
  return current().load(std::memory_order_acquire)->dot(a, b);
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("axpy: length mismatch");
  }
  current().load(std::memory_order_acquire)->axpy(alpha, x, y);
}

void horner_step(std::span<std::uint32_t> codes, std::span<const std::int32_t> digits,
                 std::uint32_t radix) {
  if (codes.size() != digits.size()) {
    throw std::invalid_argument("horner_step: length mismatch");
  }
  current().load(std::memory_order_acquire)->horner_step(codes, digits, radix);
}

} // namespace te::kernels

#include "te/kernels.hpp"

namespace te::kernels::scalar {

double dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += a[i] * b[i];
  }
  return sum;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    y[i] += alpha * x[i];
  }
}

void horner_step(std::span<std::uint32_t> codes, std::span<const std::int32_t> digits,
                 std::uint32_t radix) {
  for (std::size_t i = 0; i < codes.size(); ++i) {
    codes[i] = codes[i] * radix + static_cast<std::uint32_t>(digits[i]);
  }
}

} // namespace te::kernels::scalar

#include "grk/partitions.hpp"

#include <cmath>
#include <numbers>

#include "grk/error.hpp"

namespace grk {

namespace {

using boost::multiprecision::cpp_int;

void require_divisible(std::uint64_t n, std::uint64_t k) {
  if (n == 0 || k == 0 || n % k != 0) {
    throw Error(ErrorCode::kDomain, "partition counting needs K dividing N, got N=" +
                                        std::to_string(n) + " K=" + std::to_string(k));
  }
}

cpp_int factorial(std::uint64_t n) {
  cpp_int f = 1;
  for (std::uint64_t i = 2; i <= n; ++i) f *= i;
  return f;
}

double log2_factorial(std::uint64_t n) {
  return std::lgamma(static_cast<double>(n) + 1.0) / std::numbers::ln2;
}

}  // namespace

double log2_of(const cpp_int& value) {
  if (value <= 0) throw Error(ErrorCode::kDomain, "log2 of a non-positive integer");
  const std::size_t msb = boost::multiprecision::msb(value);
  if (msb < 60) return std::log2(value.convert_to<double>());
  const std::size_t shift = msb - 60;
  const cpp_int top = value >> shift;
  return std::log2(top.convert_to<double>()) + static_cast<double>(shift);
}

PartitionCount partition_count(std::uint64_t n, std::uint64_t k, std::uint64_t exact_cap) {
  require_divisible(n, k);
  const std::uint64_t b = n / k;
  PartitionCount out;
  if (n <= exact_cap) {
    const cpp_int block_factorial = factorial(b);
    cpp_int denominator = factorial(k);
    for (std::uint64_t i = 0; i < k; ++i) denominator *= block_factorial;
    out.exact = factorial(n) / denominator;
    out.log2_value = log2_of(*out.exact);
  } else {
    out.log2_value = log2_factorial(n) - static_cast<double>(k) * log2_factorial(b) -
                     log2_factorial(k);
  }
  return out;
}

AncillaBits ancilla_bits(std::uint64_t n, std::uint64_t k, std::uint64_t exact_cap) {
  const PartitionCount count = partition_count(n, k, exact_cap);
  AncillaBits bits;
  if (count.exact) {
    // ceil(log2 P) is the bit length of P - 1.
    const cpp_int below = *count.exact - 1;
    bits.exact_bits = below == 0 ? 0 : boost::multiprecision::msb(below) + 1;
  } else {
    bits.exact_bits = static_cast<std::uint64_t>(std::ceil(count.log2_value));
  }
  bits.asymptotic_bits =
      static_cast<double>(n) * std::log2(static_cast<double>(k)) - log2_factorial(k);
  return bits;
}

}  // namespace grk

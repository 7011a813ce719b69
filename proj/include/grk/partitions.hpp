#pragma once

// Number of ways to split N items into K unordered blocks of equal size, and
// the ancilla bits needed to label every such partition.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>

namespace grk {

inline constexpr std::uint64_t kDefaultExactPartitionCap = 10000;

struct PartitionCount {
  // N! / ((b!)^K K!); empty above the exact-mode cap.
  std::optional<boost::multiprecision::cpp_int> exact;
  double log2_value = 0.0;
};

PartitionCount partition_count(std::uint64_t n_items, std::uint64_t n_blocks,
                               std::uint64_t exact_cap = kDefaultExactPartitionCap);

struct AncillaBits {
  std::uint64_t exact_bits = 0;  // ceil(log2 P)
  double asymptotic_bits = 0.0;  // N log2 K - log2 K!
};

AncillaBits ancilla_bits(std::uint64_t n_items, std::uint64_t n_blocks,
                         std::uint64_t exact_cap = kDefaultExactPartitionCap);

// log2 of a positive big integer, accurate to double precision.
double log2_of(const boost::multiprecision::cpp_int& value);

}  // namespace grk

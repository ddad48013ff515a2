#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

namespace avd {

using BigInt = boost::multiprecision::cpp_int;

/// C(n, k); zero when k < 0 or k > n.
BigInt binom(std::int64_t n, std::int64_t k);
BigInt ipow(const BigInt& base, unsigned exp);

/// Colex rank of a strictly increasing list of non-negative integers among
/// all subsets of the same size: sum of C(p_j, j+1).
BigInt colex_rank(const std::vector<int>& sorted);
std::vector<int> colex_unrank(BigInt rank, int k);

/// Mixed-radix integer assembled most-significant digit first.
class MixedRadix {
 public:
  void push(const BigInt& digit, const BigInt& radix);
  const BigInt& value() const { return value_; }
  const BigInt& range() const { return range_; }

 private:
  BigInt value_ = 0;
  BigInt range_ = 1;
};

/// Splits a value back into digits for the given radices (most significant
/// first). Throws InputError if the value does not fit.
std::vector<BigInt> split_radix(const BigInt& value, const std::vector<BigInt>& radices);

}  // namespace avd

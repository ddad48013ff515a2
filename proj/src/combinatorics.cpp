#include "avd/combinatorics.hpp"

#include "avd/common.hpp"

namespace avd {

BigInt binom(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

BigInt ipow(const BigInt& base, unsigned exp) { return boost::multiprecision::pow(base, exp); }

BigInt colex_rank(const std::vector<int>& sorted) {
  BigInt r = 0;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    if (j > 0 && sorted[j] <= sorted[j - 1]) throw InputError("colex_rank needs a strictly increasing list");
    r += binom(sorted[j], static_cast<std::int64_t>(j) + 1);
  }
  return r;
}

std::vector<int> colex_unrank(BigInt rank, int k) {
  std::vector<int> out(k);
  for (int j = k; j >= 1; --j) {
    // Largest p with C(p, j) <= rank.
    int p = j - 1;
    while (binom(p + 1, j) <= rank) ++p;
    rank -= binom(p, j);
    out[j - 1] = p;
  }
  return out;
}

void MixedRadix::push(const BigInt& digit, const BigInt& radix) {
  if (digit < 0 || digit >= radix) throw InvariantViolation("mixed-radix digit out of range");
  value_ = value_ * radix + digit;
  range_ *= radix;
}

std::vector<BigInt> split_radix(const BigInt& value, const std::vector<BigInt>& radices) {
  BigInt rest = value;
  if (rest < 0) throw InputError("negative packed value");
  std::vector<BigInt> out(radices.size());
  for (std::size_t i = radices.size(); i-- > 0;) {
    out[i] = rest % radices[i];
    rest /= radices[i];
  }
  if (rest != 0) throw InputError("packed value exceeds its range");
  return out;
}

}  // namespace avd

#include "avd/common.hpp"

#include <bit>
#include <charconv>
#include <cstdlib>

namespace avd {

std::string_view to_string(Mode mode) {
  return mode == Mode::theory ? "theory" : "practical";
}

Mode parse_mode(std::string_view text) {
  if (text == "theory") return Mode::theory;
  if (text == "practical") return Mode::practical;
  throw InputError("unknown mode '" + std::string(text) + "' (expected theory|practical)");
}

Ratio::Ratio(std::int64_t num, std::int64_t den) {
  if (den <= 0 || num < 0) throw InputError("ratio must be non-negative with positive denominator");
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Ratio Ratio::parse(std::string_view text) {
  auto parse_int = [&](std::string_view part) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (ec != std::errc() || ptr != part.data() + part.size() || part.empty()) {
      throw InputError("cannot parse ratio '" + std::string(text) + "'");
    }
    return value;
  };
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return Ratio(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
  }
  auto dot = text.find('.');
  if (dot == std::string_view::npos) return Ratio(parse_int(text), 1);
  std::string_view whole = text.substr(0, dot);
  std::string_view frac = text.substr(dot + 1);
  if (frac.size() > 15) throw InputError("ratio '" + std::string(text) + "' has too many decimals");
  std::int64_t den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  const std::int64_t w = whole.empty() ? 0 : parse_int(whole);
  const std::int64_t f = frac.empty() ? 0 : parse_int(frac);
  return Ratio(w * den + f, den);
}

std::string Ratio::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::int64_t Ratio::ceil_times(std::int64_t k) const {
  const __int128 p = static_cast<__int128>(num_) * k;
  return static_cast<std::int64_t>((p + den_ - 1) / den_);
}

Ratio operator-(const Ratio& a, const Ratio& b) {
  const __int128 n = static_cast<__int128>(a.num()) * b.den() - static_cast<__int128>(b.num()) * a.den();
  if (n < 0) throw InputError("negative ratio");
  return Ratio(static_cast<std::int64_t>(n), a.den() * b.den());
}

Ratio operator*(std::int64_t k, const Ratio& a) { return Ratio(k * a.num(), a.den()); }

std::int64_t uniform_below(std::mt19937_64& rng, std::int64_t bound) {
  if (bound <= 0) throw std::invalid_argument("uniform_below: empty range");
  if (bound == 1) return 0;
  const auto range = static_cast<std::uint64_t>(bound - 1);
  const std::uint64_t mask = std::numeric_limits<std::uint64_t>::max() >> std::countl_zero(range);
  for (;;) {
    const std::uint64_t x = rng() & mask;
    if (x <= range) return static_cast<std::int64_t>(x);
  }
}

}  // namespace avd

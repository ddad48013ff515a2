#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace avd {

using Vertex = std::int32_t;
using EdgeId = std::int32_t;
using Colour = std::int32_t;

inline constexpr Vertex kNoVertex = -1;
inline constexpr EdgeId kNoEdge = -1;
/// Colours are 1-based; 0 marks an uncoloured edge.
inline constexpr Colour kNoColour = 0;

enum class Mode { theory, practical };

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view text);

// Error hierarchy. Each class maps onto one CLI exit status.

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input, bad parameters.
struct InputError : Error {
  using Error::Error;
};

/// Parameters fall outside the regime where a theory-mode guarantee applies.
struct RegimeError : Error {
  using Error::Error;
};

/// A loop invariant or internal consistency condition failed.
struct InvariantViolation : Error {
  using Error::Error;
};

/// Log decoding produced something inconsistent with the log itself.
struct DecodeMismatch : Error {
  using Error::Error;
};

/// Exact non-negative rational, used for the degree threshold parameter so
/// that ceilings like ceil((1/2 - eps) * delta) are computed without rounding.
class Ratio {
 public:
  constexpr Ratio() = default;
  Ratio(std::int64_t num, std::int64_t den);

  /// Accepts "0.004", "1/250", "3".
  static Ratio parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  /// ceil(this * k) for k >= 0.
  std::int64_t ceil_times(std::int64_t k) const;

  friend bool operator==(const Ratio&, const Ratio&) = default;
  friend bool operator<(const Ratio& a, const Ratio& b) {
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
  }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

Ratio operator-(const Ratio& a, const Ratio& b);
Ratio operator*(std::int64_t k, const Ratio& a);

/// Uniform integer in [0, bound) from a 64-bit engine. Bitmask rejection keeps
/// the draw sequence identical across standard library implementations, which
/// std::uniform_int_distribution does not guarantee.
std::int64_t uniform_below(std::mt19937_64& rng, std::int64_t bound);

}  // namespace avd

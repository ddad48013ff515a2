#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <optional>
#include <vector>

#include "avd/combinatorics.hpp"
#include "avd/common.hpp"
#include "json.hpp"

namespace avd {

using Real = boost::multiprecision::cpp_bin_float_50;

struct DescentEntry {
  int length = 0;
  BigInt weight;
};

/// Allowed descent lengths with their weight budgets; phi(x) = 1 + sum w x^l.
struct DescentSpec {
  std::vector<DescentEntry> entries;

  /// Throws InputError unless lengths are distinct and >= 1, weights >= 1.
  void validate() const;
  int max_length() const;
};

/// The five (length, weight) pairs for the selection loop at (delta, eps, q).
DescentSpec weights_for(int delta, Ratio eps, int q);

Real phi(const DescentSpec& spec, const Real& x);
Real phi_prime(const DescentSpec& spec, const Real& x);
/// x phi'(x) / phi(x), increasing on (0, inf).
Real slope_ratio(const DescentSpec& spec, const Real& x);

struct TauResult {
  Real tau;
  Real gamma;
  /// Certified enclosure of gamma from the final bisection bracket.
  Real gamma_lo;
  Real gamma_hi;
  int iterations = 0;
};

/// Bisection (on log x) for tau phi'(tau) = phi(tau) to relative tolerance
/// `rel_tol`. Throws InputError if every length is 1 (no solution).
TauResult solve_tau(const DescentSpec& spec, const Real& rel_tol = Real("1e-12"));

/// phi(x)/x when x phi'(x)/phi(x) < 1, nothing otherwise.
std::optional<Real> gamma_upper_bound(const DescentSpec& spec, const Real& x);

struct CertifyOptions {
  Real eps1{"1e-3"};       // scaling of the probe point
  Real eps_prime{"1e-3"};  // slack on s in the asymptotic inequality
  Real rel_tol{"1e-30"};
};

struct CertifyReport {
  std::int64_t delta = 0;
  Ratio eps;
  int q = 0;
  std::int64_t d = 0;
  BigInt s;
  bool threshold_ok = false;  // 2d < delta
  bool s_positive = false;
  bool in_regime = false;
  std::optional<TauResult> tau;
  Real probe_x;
  std::optional<Real> probe_bound;
  Real log10_gamma;  // NaN-free: 0 when tau is absent
  Real log10_s;
  /// gamma < s, decided on the certified upper end of the gamma enclosure.
  bool verdict = false;
  /// Left side and right side of the asymptotic constant inequality.
  Real ineq_lhs;
  Real ineq_rhs;
  bool ineq_holds = false;
};

CertifyReport certify_big_phase(std::int64_t delta, Ratio eps, int q, const CertifyOptions& opt = {});

struct CrossoverReport {
  /// Decades 10^1 .. 10^max_exp with their verdicts.
  std::vector<CertifyReport> decades;
  /// Least delta with a true verdict, found by bisection between the last
  /// false decade and the first true one (assumes monotone verdicts there).
  std::optional<std::int64_t> crossover;
};

CrossoverReport find_crossover(Ratio eps, int q, int max_exp = 12, const CertifyOptions& opt = {});

/// c_{q,eps1} (1 / (2^{q+2} q!))^{1/(q+1)}.
Real constant_check(int q, const Real& eps1 = Real(0));
Real c_q(int q, const Real& eps1);

/// Dyck words of semilength t whose descents all have allowed lengths, each
/// descent of length l weighted by w_l.
BigInt dyck_count_dp(int t, const DescentSpec& spec);
/// Coefficients [x^0 .. x^t_max] of y = x phi(y). Coefficient t+1 counts the
/// weighted plane trees on t+1 vertices, which equals dyck_count_dp(t).
std::vector<BigInt> tree_series(const DescentSpec& spec, int t_max);
/// Exhaustive enumeration, for cross-checking the DP on tiny inputs.
BigInt dyck_count_brute(int t, const DescentSpec& spec);

/// Partial Dyck words of semilength t built from steps "0" and "011".
BigInt small_phase_word_count(int t);

struct SmallBoundReport {
  bool holds = false;        // ceil(2 eps delta) > sqrt(32 delta)
  std::int64_t s = 0;
  std::int64_t first_true = 0;  // least delta where the check holds
  std::int64_t stable_from = 0;  // least delta0 with the check true for all delta >= delta0
};

SmallBoundReport small_phase_bound_check(std::int64_t delta, Ratio eps);

nlohmann::json certify_to_json(const CertifyReport& r);
std::string certify_table(const std::vector<CertifyReport>& rows);
std::string real_str(const Real& x, int digits = 12);

}  // namespace avd

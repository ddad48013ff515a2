#include "avd/bound_analysis.hpp"

#include <algorithm>
#include <iomanip>
#include <set>
#include <sstream>

namespace avd {

namespace mp = boost::multiprecision;

void DescentSpec::validate() const {
  std::set<int> seen;
  for (const auto& e : entries) {
    if (e.length < 1) throw InputError("descent length must be at least 1");
    if (e.weight < 1) throw InputError("descent weight must be at least 1");
    if (!seen.insert(e.length).second) throw InputError("descent lengths must be distinct");
  }
}

int DescentSpec::max_length() const {
  int m = 0;
  for (const auto& e : entries) m = std::max(m, e.length);
  return m;
}

namespace {

std::int64_t threshold_d(std::int64_t delta, Ratio eps) { return (Ratio(1, 2) - eps).ceil_times(delta); }

// The five pairs without the regime check; weights may be zero at tiny delta.
DescentSpec raw_weights(std::int64_t delta, std::int64_t d, int q) {
  const BigInt D = delta;
  const BigInt dd = d;
  const BigInt pairs = binom(d, 2);
  DescentSpec s;
  s.entries.push_back({q + 1, binom(delta, q) * ipow(dd, q + 2)});
  s.entries.push_back({2, BigInt(q + 2) * ipow(dd, 3)});
  s.entries.push_back({3, 128 * ipow(D, 3) * pairs});
  s.entries.push_back({4, 4096 * ipow(D, 4) * dd * pairs});
  s.entries.push_back({5, 2048 * ipow(D, 4) * dd * dd * pairs});
  return s;
}

Real to_real(const BigInt& x) { return Real(x); }

Real sq(const Real& x) { return x * x; }

}  // namespace

DescentSpec weights_for(int delta, Ratio eps, int q) {
  if (q < 1) throw InputError("q must be at least 1");
  if (!(Ratio(0, 1) < eps) || !(eps < Ratio(1, 2))) throw InputError("eps must lie in (0, 1/2)");
  const std::int64_t d = threshold_d(delta, eps);
  if (!(2 * d < delta)) {
    throw RegimeError("d = " + std::to_string(d) + " is not below delta/2 for delta = " + std::to_string(delta));
  }
  auto s = raw_weights(delta, d, q);
  s.validate();
  return s;
}

Real phi(const DescentSpec& spec, const Real& x) {
  Real r = 1;
  for (const auto& e : spec.entries) r += to_real(e.weight) * mp::pow(x, e.length);
  return r;
}

Real phi_prime(const DescentSpec& spec, const Real& x) {
  Real r = 0;
  for (const auto& e : spec.entries) r += to_real(e.weight) * e.length * mp::pow(x, e.length - 1);
  return r;
}

Real slope_ratio(const DescentSpec& spec, const Real& x) {
  Real num = 0;
  for (const auto& e : spec.entries) num += to_real(e.weight) * e.length * mp::pow(x, e.length);
  return num / phi(spec, x);
}

TauResult solve_tau(const DescentSpec& spec, const Real& rel_tol) {
  spec.validate();
  if (spec.max_length() < 2) {
    throw InputError("x phi'(x) / phi(x) tends to 1: no characteristic point when every descent has length 1");
  }
  auto f = [&](const Real& x) { return slope_ratio(spec, x) - 1; };
  TauResult out;
  Real lo = 1;
  Real hi = 1;
  if (f(Real(1)) >= 0) {
    while (f(lo) >= 0) {
      if (f(lo) == 0) break;
      hi = lo;
      lo /= 2;
      if (++out.iterations > 100000) throw InvariantViolation("tau bracket search diverged");
    }
  } else {
    while (f(hi) < 0) {
      lo = hi;
      hi *= 2;
      if (++out.iterations > 100000) throw InvariantViolation("tau bracket search diverged");
    }
  }
  while (hi / lo - 1 > rel_tol) {
    const Real mid = mp::sqrt(lo * hi);
    if (mid <= lo || mid >= hi) break;
    const Real fm = f(mid);
    if (fm == 0) {
      lo = hi = mid;
      break;
    }
    (fm < 0 ? lo : hi) = mid;
    ++out.iterations;
  }
  out.tau = mp::sqrt(lo * hi);
  // gamma = min phi(x)/x, so every probe bounds it from above; keep the
  // smallest. phi is increasing, so phi(lo)/hi bounds it from below.
  out.gamma = std::min({phi(spec, out.tau) / out.tau, phi(spec, lo) / lo, phi(spec, hi) / hi});
  const Real slack("1e-40");
  out.gamma_hi = out.gamma * (1 + slack);
  out.gamma_lo = phi(spec, lo) / hi * (1 - slack);
  return out;
}

std::optional<Real> gamma_upper_bound(const DescentSpec& spec, const Real& x) {
  if (!(x > 0)) throw InputError("probe point must be positive");
  if (slope_ratio(spec, x) < 1) return phi(spec, x) / x;
  return std::nullopt;
}

Real c_q(int q, const Real& eps1) {
  const Real a = Real(q) * (1 + eps1);
  return mp::pow(a, Real(1) / (q + 1)) + mp::pow(1 / a, Real(q) / (q + 1));
}

namespace {

// (1 / (2^{q+2} q!))^{1/(q+1)}
Real tail_factor(int q) {
  BigInt denom = ipow(BigInt(2), q + 2);
  for (int i = 2; i <= q; ++i) denom *= i;
  return mp::pow(1 / to_real(denom), Real(1) / (q + 1));
}

}  // namespace

Real constant_check(int q, const Real& eps1) {
  if (q < 1) throw InputError("q must be at least 1");
  return c_q(q, eps1) * tail_factor(q);
}

CertifyReport certify_big_phase(std::int64_t delta, Ratio eps, int q, const CertifyOptions& opt) {
  if (delta < 1) throw InputError("delta must be positive");
  if (q < 1) throw InputError("q must be at least 1");
  if (!(Ratio(0, 1) < eps) || !(eps < Ratio(1, 2))) throw InputError("eps must lie in (0, 1/2)");
  CertifyReport r;
  r.delta = delta;
  r.eps = eps;
  r.q = q;
  r.d = threshold_d(delta, eps);
  r.threshold_ok = 2 * r.d < delta;
  const BigInt m = BigInt(r.d - q);
  r.s = (m >= 2 ? m * (m - 1) / 2 : BigInt(0)) - 3 * BigInt(r.d);
  r.s_positive = r.s > 0;
  r.in_regime = r.threshold_ok && r.s_positive;

  DescentSpec spec = raw_weights(delta, r.d, q);
  std::erase_if(spec.entries, [](const DescentEntry& e) { return e.weight == 0; });
  if (spec.max_length() >= 2) r.tau = solve_tau(spec, opt.rel_tol);

  const BigInt w1 = binom(delta, q) * ipow(BigInt(r.d), q + 2);
  if (w1 > 0) {
    r.probe_x = mp::pow(1 / (Real(q) * (1 + opt.eps1) * to_real(w1)), Real(1) / (q + 1));
    r.probe_bound = gamma_upper_bound(spec, r.probe_x);
  }
  if (r.tau) r.log10_gamma = mp::log10(r.tau->gamma_hi);
  if (r.s_positive) r.log10_s = mp::log10(to_real(r.s));
  r.verdict = r.in_regime && r.tau && r.log10_gamma < r.log10_s;

  r.ineq_lhs = constant_check(q, opt.eps1);
  const Real half_minus = Real(eps.den() - 2 * eps.num()) / (2 * eps.den());
  r.ineq_rhs = (1 - opt.eps_prime) * sq(half_minus) / 2;
  r.ineq_holds = r.ineq_lhs < r.ineq_rhs;
  return r;
}

CrossoverReport find_crossover(Ratio eps, int q, int max_exp, const CertifyOptions& opt) {
  if (max_exp < 1 || max_exp > 15) throw InputError("sweep exponent must lie in [1, 15]");
  CrossoverReport out;
  std::int64_t p = 1;
  std::int64_t last_false = 0;
  for (int k = 1; k <= max_exp; ++k) {
    p *= 10;
    out.decades.push_back(certify_big_phase(p, eps, q, opt));
    if (out.decades.back().verdict) {
      std::int64_t lo = last_false;
      std::int64_t hi = p;
      while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        (certify_big_phase(mid, eps, q, opt).verdict ? hi : lo) = mid;
      }
      out.crossover = hi;
      break;
    }
    last_false = p;
  }
  return out;
}

BigInt dyck_count_dp(int t, const DescentSpec& spec) {
  spec.validate();
  if (t < 0) throw InputError("semilength must be non-negative");
  if (t == 0) return 1;
  // state: zeros placed, height, whether the word ends in a descent
  const int H = t + 1;
  std::vector<BigInt> after_zero((t + 1) * H), after_desc((t + 1) * H);
  auto at = [H](int z, int h) { return z * H + h; };
  after_desc[at(0, 0)] = 1;  // empty prefix behaves like "may only add a 0"
  for (int z = 0; z <= t; ++z) {
    // Descents stay at the same z and lower h, so walk h downwards.
    for (int h = z; h >= 0; --h) {
      const BigInt a = after_zero[at(z, h)];
      const BigInt b = after_desc[at(z, h)];
      if (a == 0 && b == 0) continue;
      if (z < t && h + 1 < H) after_zero[at(z + 1, h + 1)] += a + b;
      if (a != 0) {
        for (const auto& e : spec.entries) {
          if (e.length <= h) after_desc[at(z, h - e.length)] += a * e.weight;
        }
      }
    }
  }
  return after_desc[at(t, 0)];
}

std::vector<BigInt> tree_series(const DescentSpec& spec, int t_max) {
  spec.validate();
  if (t_max < 0) throw InputError("series order must be non-negative");
  const int n = t_max + 1;
  auto mul = [n](const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
    std::vector<BigInt> c(n);
    for (int i = 0; i < n; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; i + j < n; ++j) c[i + j] += a[i] * b[j];
    }
    return c;
  };
  std::vector<BigInt> y(n);
  for (int iter = 0; iter < n; ++iter) {
    std::vector<BigInt> ph(n);
    ph[0] = 1;
    std::vector<BigInt> pw(n);
    pw[0] = 1;
    const int top = spec.max_length();
    for (int l = 1; l <= top; ++l) {
      pw = mul(pw, y);
      for (const auto& e : spec.entries) {
        if (e.length != l) continue;
        for (int i = 0; i < n; ++i) ph[i] += e.weight * pw[i];
      }
    }
    std::vector<BigInt> next(n);
    for (int i = 0; i + 1 < n; ++i) next[i + 1] = ph[i];
    y = std::move(next);
  }
  return y;
}

BigInt dyck_count_brute(int t, const DescentSpec& spec) {
  spec.validate();
  if (t < 0 || t > 12) throw InputError("brute-force Dyck enumeration supports 0 <= t <= 12");
  BigInt total = 0;
  const int len = 2 * t;
  for (std::uint32_t mask = 0; mask < (1u << len); ++mask) {
    int h = 0;
    bool ok = true;
    for (int i = 0; i < len && ok; ++i) {
      h += (mask >> (len - 1 - i)) & 1u ? -1 : 1;
      ok = h >= 0;
    }
    if (!ok || h != 0) continue;
    BigInt weight = 1;
    int run = 0;
    for (int i = 0; i <= len && weight != 0; ++i) {
      const bool one = i < len && ((mask >> (len - 1 - i)) & 1u);
      if (one) {
        ++run;
        continue;
      }
      if (run > 0) {
        auto it = std::find_if(spec.entries.begin(), spec.entries.end(),
                               [run](const DescentEntry& e) { return e.length == run; });
        weight = it == spec.entries.end() ? BigInt(0) : weight * it->weight;
      }
      run = 0;
    }
    total += weight;
  }
  return total;
}

BigInt small_phase_word_count(int t) {
  if (t < 0) throw InputError("semilength must be non-negative");
  std::vector<BigInt> by_height(t + 2);
  by_height[0] = 1;
  for (int step = 0; step < t; ++step) {
    std::vector<BigInt> next(t + 2);
    for (int h = 0; h <= t; ++h) {
      if (by_height[h] == 0) continue;
      next[h + 1] += by_height[h];                // "0"
      if (h >= 1) next[h - 1] += by_height[h];    // "011"
    }
    by_height = std::move(next);
  }
  BigInt total = 0;
  for (const auto& c : by_height) total += c;
  return total;
}

SmallBoundReport small_phase_bound_check(std::int64_t delta, Ratio eps) {
  if (delta < 1) throw InputError("delta must be positive");
  if (!(Ratio(0, 1) < eps)) throw InputError("eps must be positive");
  const Ratio two_eps = 2 * eps;
  auto holds = [&](std::int64_t dl) {
    const __int128 c = two_eps.ceil_times(dl);
    return c > 0 && c * c > static_cast<__int128>(32) * dl;
  };
  SmallBoundReport r;
  r.s = two_eps.ceil_times(delta);
  r.holds = holds(delta);
  // Above 8/eps^2 the check holds outright; just below it only a window of
  // width about 1.5/eps can still pass through rounding.
  const __int128 a = eps.num();
  const __int128 b = eps.den();
  const __int128 star = 8 * b * b / (a * a);
  if (star > static_cast<__int128>(1'000'000'000'000'000LL)) throw InputError("eps too small for an exact threshold search");
  std::int64_t from = static_cast<std::int64_t>(star) + 1;
  while (from > 1 && holds(from - 1)) --from;
  r.stable_from = from;
  const std::int64_t window = static_cast<std::int64_t>(4 * b / a) + 10;
  r.first_true = from;
  for (std::int64_t dl = std::max<std::int64_t>(1, from - window); dl < from; ++dl) {
    if (holds(dl)) {
      r.first_true = dl;
      break;
    }
  }
  return r;
}

std::string real_str(const Real& x, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

namespace {

std::string big_str(const BigInt& x) {
  const std::string s = x.str();
  if (s.size() <= 15) return s;
  return real_str(Real(x), 6);
}

}  // namespace

nlohmann::json certify_to_json(const CertifyReport& r) {
  nlohmann::json j{{"delta", r.delta},
                   {"eps", r.eps.str()},
                   {"q", r.q},
                   {"d", r.d},
                   {"s", r.s.str()},
                   {"threshold_ok", r.threshold_ok},
                   {"s_positive", r.s_positive},
                   {"in_regime", r.in_regime},
                   {"verdict", r.verdict},
                   {"log10_s", r.s_positive ? real_str(r.log10_s, 15) : "-inf"},
                   {"inequality", {{"lhs", real_str(r.ineq_lhs, 15)}, {"rhs", real_str(r.ineq_rhs, 15)}, {"holds", r.ineq_holds}}}};
  if (r.tau) {
    j["tau"] = real_str(r.tau->tau, 20);
    j["gamma"] = real_str(r.tau->gamma, 20);
    j["gamma_hi"] = real_str(r.tau->gamma_hi, 20);
    j["log10_gamma"] = real_str(r.log10_gamma, 15);
  }
  j["probe_x"] = real_str(r.probe_x, 20);
  j["probe_bound"] = r.probe_bound ? nlohmann::json(real_str(*r.probe_bound, 20)) : nlohmann::json(nullptr);
  return j;
}

std::string certify_table(const std::vector<CertifyReport>& rows) {
  std::ostringstream os;
  os << std::left << std::setw(16) << "delta" << std::setw(10) << "eps" << std::setw(5) << "q" << std::setw(16) << "d"
     << std::setw(16) << "s" << std::setw(16) << "gamma" << std::setw(16) << "probe bound" << "gamma<s\n";
  for (const auto& r : rows) {
    os << std::left << std::setw(16) << r.delta << std::setw(10) << r.eps.str() << std::setw(5) << r.q << std::setw(16)
       << r.d << std::setw(16) << big_str(r.s) << std::setw(16) << (r.tau ? real_str(r.tau->gamma, 6) : "-")
       << std::setw(16) << (r.probe_bound ? real_str(*r.probe_bound, 6) : "refused")
       << (r.verdict ? "true" : "false") << (r.in_regime ? "" : " (out of regime)") << "\n";
  }
  return os.str();
}

}  // namespace avd

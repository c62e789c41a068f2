#pragma once

// Individual offender decision calculus and participation accounting.
//
// An offender compares the expected utility of a crime, (1-p)U(wc) - pU(s),
// against the utility of legal income U(w). The penalty enters as a
// subtracted utility evaluated at the monetised penalty s >= 0, exactly as the
// one-period model is written; it is not the usual two-state lottery over
// wc and wc - s.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "heritage/error.hpp"

namespace heritage {

struct RiskNeutral {};

/// Constant relative risk aversion, U(x) = (x^(1-rho) - 1) / (1 - rho).
struct Crra {
  double rho = 2.0;
};

/// Piecewise-linear reference-dependent utility: slope 1 above the reference
/// income, slope loss_aversion below it.
struct ReferencePoint {
  double ref_income = 0.0;
  double loss_aversion = 2.25;
};

using UtilitySpec = std::variant<RiskNeutral, Crra, ReferencePoint>;

/// Incomes in [0, kCrraFloor) are clamped to kCrraFloor before CRRA
/// evaluation so that rho >= 1 stays finite at zero.
inline constexpr double kCrraFloor = 1e-9;

inline void validate(const UtilitySpec& spec) {
  if (const auto* c = std::get_if<Crra>(&spec)) {
    if (!(c->rho > 0.0) || c->rho == 1.0 || !std::isfinite(c->rho))
      fail(ErrorCode::RangeError, "CRRA rho must be finite, > 0 and != 1, got " + std::to_string(c->rho));
  } else if (const auto* r = std::get_if<ReferencePoint>(&spec)) {
    if (!std::isfinite(r->ref_income))
      fail(ErrorCode::RangeError, "reference income must be finite");
    if (!(r->loss_aversion >= 1.0) || !std::isfinite(r->loss_aversion))
      fail(ErrorCode::RangeError, "loss aversion must be finite and >= 1");
  }
}

namespace detail {

inline std::string shortest(double x) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

}  // namespace detail

/// Same syntax the config parser accepts, e.g. "crra(2)".
inline std::string describe(const UtilitySpec& spec) {
  using detail::shortest;
  return std::visit(
      [](const auto& u) -> std::string {
        using T = std::decay_t<decltype(u)>;
        if constexpr (std::is_same_v<T, RiskNeutral>) {
          return "neutral";
        } else if constexpr (std::is_same_v<T, Crra>) {
          return "crra(" + shortest(u.rho) + ")";
        } else {
          return "reference(" + shortest(u.ref_income) + "," + shortest(u.loss_aversion) + ")";
        }
      },
      spec);
}

inline double utility(const UtilitySpec& spec, double x) {
  return std::visit(
      [x](const auto& u) -> double {
        using T = std::decay_t<decltype(u)>;
        if constexpr (std::is_same_v<T, RiskNeutral>) {
          return x;
        } else if constexpr (std::is_same_v<T, Crra>) {
          if (x < 0.0 || std::isnan(x))
            fail(ErrorCode::DomainError, "CRRA utility undefined for negative income " + std::to_string(x));
          const double xc = std::max(x, kCrraFloor);
          return (std::pow(xc, 1.0 - u.rho) - 1.0) / (1.0 - u.rho);
        } else {
          const double d = x - u.ref_income;
          return d >= 0.0 ? d : u.loss_aversion * d;
        }
      },
      spec);
}

struct OffenderProfile {
  double wc = 0.0;  // gain from a successful crime
  double w = 0.0;   // legal income
  double s = 0.0;   // monetised penalty
  double p = 0.0;   // probability of detention
};

inline void validate(const OffenderProfile& profile) {
  if (!(profile.p >= 0.0 && profile.p <= 1.0))
    fail(ErrorCode::RangeError, "detention probability must lie in [0,1], got " + std::to_string(profile.p));
  if (!(profile.s >= 0.0) || !std::isfinite(profile.s))
    fail(ErrorCode::RangeError, "penalty must be finite and >= 0");
  if (!std::isfinite(profile.wc) || !std::isfinite(profile.w))
    fail(ErrorCode::RangeError, "incomes must be finite");
}

enum class Decision { Abstain, Commit };

/// Commit iff (1-p)U(wc) - pU(s) > U(w). Ties abstain.
inline Decision decide_crime(const OffenderProfile& profile, const UtilitySpec& spec) {
  validate(profile);
  const double crime = (1.0 - profile.p) * utility(spec, profile.wc) - profile.p * utility(spec, profile.s);
  return crime > utility(spec, profile.w) ? Decision::Commit : Decision::Abstain;
}

/// (1-p)wc - p s - w
inline double net_expected_return(const OffenderProfile& profile) {
  validate(profile);
  return (1.0 - profile.p) * profile.wc - profile.p * profile.s - profile.w;
}

struct ParticipationStats {
  double cpp = 0.0;     // crimes per capita per period
  double cpr = 0.0;     // share of the population committing
  double lambda = 0.0;  // crimes per active offender per period
};

inline ParticipationStats participation_decompose(double cpr, double lambda) {
  if (!(cpr >= 0.0 && cpr <= 1.0))
    fail(ErrorCode::RangeError, "participation rate must lie in [0,1], got " + std::to_string(cpr));
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    fail(ErrorCode::RangeError, "crimes per offender must be finite and >= 0");
  return {cpr * lambda, cpr, lambda};
}

/// Recovers lambda = cpp / cpr.
inline double lambda_from(double cpp, double cpr) {
  if (!(cpr > 0.0 && cpr <= 1.0))
    fail(ErrorCode::DomainError, "lambda is undefined unless the participation rate is in (0,1]");
  if (!(cpp >= 0.0)) fail(ErrorCode::RangeError, "crimes per capita must be >= 0");
  return cpp / cpr;
}

struct LotteryOutcome {
  double probability = 0.0;
  double amount = 0.0;
};

namespace detail {

inline double inverse_utility_closed_form(const UtilitySpec& spec, double u) {
  if (std::holds_alternative<RiskNeutral>(spec)) return u;
  const double rho = std::get<Crra>(spec).rho;
  const double base = (1.0 - rho) * u + 1.0;
  if (base <= 0.0) return 0.0;
  return std::pow(base, 1.0 / (1.0 - rho));
}

}  // namespace detail

/// Income whose utility equals the lottery's expected utility. Closed form for
/// risk-neutral and CRRA utilities, bisection (1e-9 absolute) otherwise.
inline double certainty_equivalent(const UtilitySpec& spec, std::span<const LotteryOutcome> lottery) {
  validate(spec);
  if (lottery.empty()) fail(ErrorCode::DomainError, "lottery has no outcomes");
  double total = 0.0;
  double expected_utility = 0.0;
  double lo = lottery.front().amount;
  double hi = lo;
  for (const auto& o : lottery) {
    if (!(o.probability >= 0.0 && o.probability <= 1.0))
      fail(ErrorCode::RangeError, "lottery probabilities must lie in [0,1]");
    total += o.probability;
    expected_utility += o.probability * utility(spec, o.amount);
    lo = std::min(lo, o.amount);
    hi = std::max(hi, o.amount);
  }
  if (std::abs(total - 1.0) > 1e-9) fail(ErrorCode::RangeError, "lottery probabilities must sum to 1");
  if (lo == hi) return lo;

  if (!std::holds_alternative<ReferencePoint>(spec)) {
    return std::clamp(detail::inverse_utility_closed_form(spec, expected_utility), lo, hi);
  }
  for (int i = 0; i < 200 && hi - lo > 1e-9; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (utility(spec, mid) < expected_utility) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

inline double certainty_equivalent(const UtilitySpec& spec, std::initializer_list<LotteryOutcome> lottery) {
  return certainty_equivalent(spec, std::span<const LotteryOutcome>(lottery.begin(), lottery.size()));
}

}  // namespace heritage

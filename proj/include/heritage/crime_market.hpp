#pragma once

// Aggregate crime supply, the social tolerance constraint, their equilibrium
// in the detention probability, and the comparative statics of imprisonment.

#include <algorithm>
#include <cmath>
#include <string>

#include "heritage/econ_core.hpp"
#include "heritage/error.hpp"

namespace heritage {

/// Logistic supply of crimes per capita in the net expected return g:
/// cpp = cpp_max / (1 + exp(-slope (g - midpoint))).
struct SupplyCurveParams {
  double cpp_max = 1.0;
  double slope = 1.0;
  double midpoint = 0.0;
};

inline void validate(const SupplyCurveParams& s) {
  if (!(s.cpp_max > 0.0) || !std::isfinite(s.cpp_max)) fail(ErrorCode::RangeError, "supply cpp_max must be finite and > 0");
  if (!(s.slope > 0.0) || !std::isfinite(s.slope)) fail(ErrorCode::RangeError, "supply slope must be finite and > 0");
  if (!std::isfinite(s.midpoint)) fail(ErrorCode::RangeError, "supply midpoint must be finite");
}

/// Socially tolerated crime level, falling linearly with enforcement spend:
/// tolerated = tolerable_at_zero_cost - spend / marginal_damage.
struct DemandConstraint {
  double tolerable_at_zero_cost = 0.0;
  double marginal_damage = 1.0;
};

inline void validate(const DemandConstraint& d) {
  if (!(d.tolerable_at_zero_cost >= 0.0) || !std::isfinite(d.tolerable_at_zero_cost))
    fail(ErrorCode::RangeError, "tolerable crime level must be finite and >= 0");
  if (!(d.marginal_damage > 0.0)) fail(ErrorCode::RangeError, "marginal damage must be > 0");
}

inline double tolerated_level(const DemandConstraint& d, double enforcement_spend) {
  return d.tolerable_at_zero_cost - enforcement_spend / d.marginal_damage;
}

struct Elasticities {
  double eta = 0.0;      // demand for crimes
  double epsilon = 0.0;  // supply of crimes
};

inline void validate(const Elasticities& el) {
  if (!(el.eta >= 0.0) || !(el.epsilon >= 0.0) || std::isnan(el.eta) || std::isnan(el.epsilon))
    fail(ErrorCode::RangeError, "elasticities must be >= 0");
  if (!(el.eta + el.epsilon > 0.0))
    fail(ErrorCode::DomainError, "eta + epsilon must be > 0");
}

struct EnforcementResponseParams {
  double p_floor = 0.0;
  double p_max = 1.0;
  double efficiency = 1.0;  // probability gained per unit of budget / tev_at_risk
};

inline void validate(const EnforcementResponseParams& r) {
  if (!(r.p_floor >= 0.0 && r.p_floor <= r.p_max && r.p_max <= 1.0))
    fail(ErrorCode::RangeError, "enforcement response requires 0 <= p_floor <= p_max <= 1");
  if (!(r.efficiency > 0.0) || !std::isfinite(r.efficiency))
    fail(ErrorCode::RangeError, "enforcement efficiency must be finite and > 0");
}

inline double supply_cpp(const SupplyCurveParams& params, const OffenderProfile& aggregate) {
  validate(params);
  const double g = net_expected_return(aggregate);
  return params.cpp_max / (1.0 + std::exp(-params.slope * (g - params.midpoint)));
}

/// Crimes averted by extra imprisonment delta_i (in crime-equivalent units):
/// eta * delta_i / (epsilon + eta).
inline double imprisonment_effect(const Elasticities& el, double delta_i) {
  validate(el);
  if (!(delta_i >= 0.0) || !std::isfinite(delta_i)) fail(ErrorCode::RangeError, "delta_i must be finite and >= 0");
  return el.eta * delta_i / (el.epsilon + el.eta);
}

/// Detention probability bought by an enforcement budget, relative to the
/// value at stake, clamped to [p_floor, p_max].
inline double enforcement_response(double budget_allocated, double tev_at_risk, const EnforcementResponseParams& params) {
  validate(params);
  if (!(budget_allocated >= 0.0) || std::isnan(budget_allocated)) fail(ErrorCode::RangeError, "budget must be >= 0");
  if (!(tev_at_risk > 0.0)) fail(ErrorCode::DomainError, "tev_at_risk must be > 0");
  if (std::isinf(budget_allocated)) return params.p_max;
  const double p = params.p_floor + params.efficiency * (budget_allocated / tev_at_risk);
  return std::clamp(p, params.p_floor, params.p_max);
}

/// Inverse of enforcement_response on [p_floor, p_max]: spend needed to reach p.
inline double enforcement_spend_for(double p, double tev_at_risk, const EnforcementResponseParams& params) {
  validate(params);
  if (!(tev_at_risk > 0.0)) fail(ErrorCode::DomainError, "tev_at_risk must be > 0");
  return std::max(0.0, p - params.p_floor) * tev_at_risk / params.efficiency;
}

/// Efficiency that makes `budget` yield `target_p` from `p_floor`.
inline double calibrate_efficiency(double target_p, double budget, double tev_at_risk, double p_floor = 0.0) {
  if (!(budget > 0.0) || !(tev_at_risk > 0.0)) fail(ErrorCode::DomainError, "calibration needs budget > 0 and tev_at_risk > 0");
  if (!(target_p > p_floor && target_p <= 1.0)) fail(ErrorCode::RangeError, "calibration target must lie in (p_floor, 1]");
  return (target_p - p_floor) * tev_at_risk / budget;
}

struct CrossingResult {
  double x = 0.0;
  double residual = 0.0;  // |f(x) - g(x)|
  int iterations = 0;
};

/// Bisection for f(x) = g(x) on [lo, hi]. Stops when |f - g| < tolerance or
/// after max_iterations. Throws NoCrossing when the endpoints do not bracket a
/// root. A root at lo is returned immediately.
template <class F, class G>
CrossingResult solve_crossing(F&& f, G&& g, double lo, double hi, double tolerance, int max_iterations = 200) {
  if (!(lo <= hi)) fail(ErrorCode::DomainError, "crossing interval is empty");
  auto diff = [&](double x) { return f(x) - g(x); };
  double d_lo = diff(lo);
  if (std::abs(d_lo) < tolerance || d_lo == 0.0) return {lo, std::abs(d_lo), 0};
  const double d_hi = diff(hi);
  if (std::abs(d_hi) < tolerance) return {hi, std::abs(d_hi), 0};
  if ((d_lo > 0.0) == (d_hi > 0.0))
    fail(ErrorCode::NoCrossing, "curves do not cross on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");

  double mid = lo;
  double d_mid = d_lo;
  int it = 0;
  while (it < max_iterations) {
    ++it;
    mid = 0.5 * (lo + hi);
    d_mid = diff(mid);
    if (std::abs(d_mid) < tolerance || mid == lo || mid == hi) break;
    if ((d_mid > 0.0) == (d_lo > 0.0)) {
      lo = mid;
      d_lo = d_mid;
    } else {
      hi = mid;
    }
  }
  return {mid, std::abs(d_mid), it};
}

struct EquilibriumResult {
  double crime_level = 0.0;  // crimes per capita
  double p_star = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Detention probability at which supplied crime meets the tolerated level.
/// Enforcement spend at p is the spend the response map needs to reach p.
inline EquilibriumResult solve_equilibrium(const SupplyCurveParams& supply, const DemandConstraint& demand,
                                           const OffenderProfile& base_profile,
                                           const EnforcementResponseParams& response, double tev_at_risk) {
  validate(supply);
  validate(demand);
  validate(response);
  validate(base_profile);
  if (!(tev_at_risk > 0.0)) fail(ErrorCode::DomainError, "tev_at_risk must be > 0");

  auto supplied = [&](double p) {
    OffenderProfile profile = base_profile;
    profile.p = p;
    return supply_cpp(supply, profile);
  };
  auto tolerated = [&](double p) { return tolerated_level(demand, enforcement_spend_for(p, tev_at_risk, response)); };

  const double tolerance = 1e-9 * supply.cpp_max;
  const auto root = solve_crossing(supplied, tolerated, response.p_floor, response.p_max, tolerance);
  return {supplied(root.x), root.x, root.residual, root.iterations, root.residual < tolerance};
}

}  // namespace heritage

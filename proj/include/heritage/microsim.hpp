#pragma once

// Agent-based population simulation of the offender decision. Each agent draws
// its incomes, penalty perception and risk attitude from a private RNG stream
// keyed on (seed, agent index), so results do not depend on evaluation order
// and a sweep over p reuses the same agents (common random numbers).

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "heritage/econ_core.hpp"
#include "heritage/error.hpp"

namespace heritage {

namespace dist {
struct Constant {
  double value = 0.0;
};
struct Uniform {
  double lo = 0.0;
  double hi = 1.0;
};
struct LogNormal {
  double mu = 0.0;
  double sigma = 1.0;
};
/// Logistic(location, scale); CDF 1 / (1 + exp(-(x - location) / scale)).
struct Logistic {
  double location = 0.0;
  double scale = 1.0;
};
}  // namespace dist

using DistributionSpec = std::variant<dist::Constant, dist::Uniform, dist::LogNormal, dist::Logistic>;

inline void validate(const DistributionSpec& d) {
  std::visit(
      [](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, dist::Constant>) {
          if (!std::isfinite(x.value)) fail(ErrorCode::RangeError, "constant distribution value must be finite");
        } else if constexpr (std::is_same_v<T, dist::Uniform>) {
          if (!(x.lo <= x.hi) || !std::isfinite(x.lo) || !std::isfinite(x.hi))
            fail(ErrorCode::RangeError, "uniform distribution needs finite lo <= hi");
        } else if constexpr (std::is_same_v<T, dist::LogNormal>) {
          if (!std::isfinite(x.mu) || !(x.sigma > 0.0) || !std::isfinite(x.sigma))
            fail(ErrorCode::RangeError, "lognormal distribution needs finite mu and sigma > 0");
        } else {
          if (!std::isfinite(x.location) || !(x.scale > 0.0) || !std::isfinite(x.scale))
            fail(ErrorCode::RangeError, "logistic distribution needs finite location and scale > 0");
        }
      },
      d);
}

template <class Rng>
double draw(const DistributionSpec& d, Rng& rng) {
  return std::visit(
      [&rng](const auto& x) -> double {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, dist::Constant>) {
          return x.value;
        } else if constexpr (std::is_same_v<T, dist::Uniform>) {
          if (x.lo == x.hi) return x.lo;
          return std::uniform_real_distribution<double>(x.lo, x.hi)(rng);
        } else if constexpr (std::is_same_v<T, dist::LogNormal>) {
          return std::lognormal_distribution<double>(x.mu, x.sigma)(rng);
        } else {
          const double u = std::uniform_real_distribution<double>(std::nextafter(0.0, 1.0), 1.0)(rng);
          return x.location + x.scale * std::log(u / (1.0 - u));
        }
      },
      d);
}

struct RiskMixEntry {
  UtilitySpec utility;
  double weight = 1.0;
};

struct PopulationSpec {
  long n_agents = 1000;
  DistributionSpec wage = dist::Constant{0.0};
  DistributionSpec crime_gain = dist::Constant{0.0};
  DistributionSpec penalty_perception = dist::Constant{0.0};
  std::vector<RiskMixEntry> risk_mix = {{RiskNeutral{}, 1.0}};
  double p = 0.0;
  double lambda_active = 1.0;
  std::uint64_t seed = 0;
};

inline void validate(const PopulationSpec& spec) {
  if (spec.n_agents <= 0) fail(ErrorCode::RangeError, "population needs at least one agent");
  validate(spec.wage);
  validate(spec.crime_gain);
  validate(spec.penalty_perception);
  if (spec.risk_mix.empty()) fail(ErrorCode::RangeError, "risk mix is empty");
  double total = 0.0;
  for (const auto& e : spec.risk_mix) {
    validate(e.utility);
    if (!(e.weight >= 0.0)) fail(ErrorCode::RangeError, "risk mix weights must be >= 0");
    total += e.weight;
  }
  if (std::abs(total - 1.0) > 1e-9) fail(ErrorCode::RangeError, "risk mix weights must sum to 1");
  if (!(spec.p >= 0.0 && spec.p <= 1.0)) fail(ErrorCode::RangeError, "p must lie in [0,1]");
  if (!(spec.lambda_active > 0.0) || !std::isfinite(spec.lambda_active))
    fail(ErrorCode::RangeError, "lambda_active must be finite and > 0");
}

struct SimResult {
  double cpr = 0.0;
  double lambda_realized = 0.0;
  double cpp = 0.0;
  long n_committing = 0;
  long total_crimes = 0;
  double stderr_cpr = 0.0;
  std::vector<long> agents_by_mix;      // agents drawn per risk-mix entry
  std::vector<long> committing_by_mix;  // committing agents per risk-mix entry
};

namespace detail {

// splitmix64 finalizer; spreads (seed, agent) pairs over the engine seed space.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

/// Independent stream for one agent. Seeding is cheap enough to do per agent,
/// which keeps every agent's draws independent of population size and order.
inline std::mt19937_64 agent_stream(std::uint64_t seed, std::uint64_t agent) {
  return std::mt19937_64(detail::mix64(detail::mix64(seed) ^ agent));
}

struct AgentDraw {
  OffenderProfile profile;
  std::size_t mix_index = 0;
};

template <class Rng>
AgentDraw draw_agent(const PopulationSpec& spec, Rng& rng) {
  AgentDraw a;
  a.profile.w = draw(spec.wage, rng);
  a.profile.wc = draw(spec.crime_gain, rng);
  a.profile.s = draw(spec.penalty_perception, rng);
  a.profile.p = spec.p;
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  double cumulative = 0.0;
  a.mix_index = spec.risk_mix.size() - 1;
  for (std::size_t i = 0; i < spec.risk_mix.size(); ++i) {
    cumulative += spec.risk_mix[i].weight;
    if (u < cumulative) {
      a.mix_index = i;
      break;
    }
  }
  return a;
}

inline SimResult simulate_population(const PopulationSpec& spec) {
  validate(spec);
  SimResult out;
  out.agents_by_mix.assign(spec.risk_mix.size(), 0);
  out.committing_by_mix.assign(spec.risk_mix.size(), 0);
  std::poisson_distribution<long> crimes(spec.lambda_active);

  for (long i = 0; i < spec.n_agents; ++i) {
    auto rng = agent_stream(spec.seed, static_cast<std::uint64_t>(i));
    const auto agent = draw_agent(spec, rng);
    ++out.agents_by_mix[agent.mix_index];
    if (agent.profile.s < 0.0) fail(ErrorCode::DomainError, "penalty perception draw is negative");
    if (decide_crime(agent.profile, spec.risk_mix[agent.mix_index].utility) == Decision::Commit) {
      ++out.n_committing;
      ++out.committing_by_mix[agent.mix_index];
      crimes.reset();
      out.total_crimes += crimes(rng);
    }
  }

  const auto n = static_cast<double>(spec.n_agents);
  out.cpr = static_cast<double>(out.n_committing) / n;
  out.lambda_realized = out.n_committing > 0 ? static_cast<double>(out.total_crimes) / static_cast<double>(out.n_committing) : 0.0;
  out.cpp = out.cpr * out.lambda_realized;
  out.stderr_cpr = std::sqrt(out.cpr * (1.0 - out.cpr) / n);
  return out;
}

struct SweepPoint {
  double p = 0.0;
  SimResult result;
};

/// Re-simulates the same agents at each detention probability.
inline std::vector<SweepPoint> enforcement_sweep(const PopulationSpec& spec, std::span<const double> p_values) {
  for (double p : p_values)
    if (!(p >= 0.0 && p <= 1.0)) fail(ErrorCode::RangeError, "sweep p values must lie in [0,1]");
  std::vector<SweepPoint> out;
  out.reserve(p_values.size());
  for (double p : p_values) {
    PopulationSpec at = spec;
    at.p = p;
    out.push_back({p, simulate_population(at)});
  }
  return out;
}

}  // namespace heritage

#include "jamgame/equilibrium_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "jamgame/error.hpp"
#include "jamgame/golden_section.hpp"

namespace jamgame {

namespace {

void check_lambda(double lambda1) {
  if (!(lambda1 > 0.0) || !std::isfinite(lambda1)) {
    throw Error(ErrorCode::kConfigError, "lambda1 must be positive");
  }
}

void check_price(double mu0) {
  if (!(mu0 > 0.0) || !std::isfinite(mu0)) {
    throw Error(ErrorCode::kNonPositivePrice, "uniform price must be positive");
  }
}

std::vector<std::size_t> require_jammable(const GainProfile& profile) {
  auto set = jammable_set(profile);
  if (set.empty()) {
    throw Error(ErrorCode::kNoJammableEavesdropper,
                "no eavesdropper has both positive beta and alpha");
  }
  return set;
}

// Uniform prices at which the follower's common SINR crosses `theta`.
// Between the two values the follower holds gamma0 exactly at theta.
void push_crossings(double theta, double beta_at_or_above, double beta_above, double lambda1,
                    std::vector<double>& out) {
  const double scale = lambda1 * theta * theta / (1.0 + theta);
  if (beta_at_or_above > 0.0) out.push_back(scale / beta_at_or_above);
  if (beta_above > 0.0) out.push_back(scale / beta_above);
}

}  // namespace

std::vector<std::size_t> jammable_set(const GainProfile& profile) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (profile.beta[i] > 0.0 && profile.alpha[i] > 0.0) out.push_back(i);
  }
  return out;
}

double uniform_price_revenue(double beta_sum, std::size_t count, double sigma_e2, double lambda1,
                             double mu0) {
  check_lambda(lambda1);
  check_price(mu0);
  const double x = mu0 * beta_sum;
  const double q = std::sqrt(x * (4.0 * lambda1 + x));
  const double sold = x > 0.0 ? 2.0 * lambda1 * x / (x + q) : 0.0;
  return sold - static_cast<double>(count) * sigma_e2 * mu0;
}

double uniform_price_revenue(const GainProfile& profile, double lambda1, double mu0) {
  profile.validate();
  const auto set = require_jammable(profile);
  double beta_sum = 0.0;
  for (std::size_t i : set) beta_sum += profile.beta[i];
  return uniform_price_revenue(beta_sum, set.size(), profile.sigma_e2, lambda1, mu0);
}

double uniform_price_revenue_curvature(double beta_sum, double lambda1, double mu0) {
  check_lambda(lambda1);
  check_price(mu0);
  const double x = mu0 * beta_sum;
  const double q = std::sqrt(x * (4.0 * lambda1 + x));
  return -2.0 * lambda1 * lambda1 * beta_sum * beta_sum / (q * q * q);
}

double closed_form_uniform_price(double beta_sum, std::size_t count, double sigma_e2,
                                 double lambda1) {
  check_lambda(lambda1);
  if (!(beta_sum > 0.0) || count == 0) {
    throw Error(ErrorCode::kNoJammableEavesdropper, "empty jammed set");
  }
  // With s = K sigma_e2 and r = sqrt(s (c + s)) the stationary price is
  //   mu0 = -2 lambda1 / c + lambda1 (c + 2s) / (c r),
  // rationalized here so that no cancellation occurs when c << s.
  const double c = beta_sum;
  const double s = static_cast<double>(count) * sigma_e2;
  const double r = std::sqrt(s * (c + s));
  return lambda1 * c / (r * ((c + 2.0 * s) + 2.0 * r));
}

double follower_jammer_revenue(const GainProfile& profile, double lambda1, double mu0) {
  check_price(mu0);
  const auto prices = PriceVector::uniform(profile.size(), mu0);
  const auto sol = solve_fixed_price(profile, prices, lambda1);
  return total_jammer_revenue(profile, prices, sol.powers);
}

double follower_jammer_revenue(const GainProfile& profile, const PriceVector& prices,
                               double lambda1) {
  try {
    const auto sol = solve_fixed_price(profile, prices, lambda1);
    return total_jammer_revenue(profile, prices, sol.powers);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kNoJammableEavesdropper) return 0.0;
    throw;
  }
}

std::vector<double> active_set_breakpoints(const GainProfile& profile, double lambda1) {
  profile.validate();
  check_lambda(lambda1);
  const auto set = require_jammable(profile);

  std::vector<double> thresholds;
  for (std::size_t i : set) thresholds.push_back(profile.unjammed_sinr(i));
  double floor = 0.0;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (profile.beta[i] > 0.0 && profile.alpha[i] == 0.0) {
      floor = std::max(floor, profile.unjammed_sinr(i));
    }
  }
  if (floor > 0.0) thresholds.push_back(floor);

  auto beta_sum_where = [&](auto pred) {
    double acc = 0.0;
    for (std::size_t i : set) {
      if (pred(profile.unjammed_sinr(i))) acc += profile.beta[i];
    }
    return acc;
  };

  std::vector<double> breaks;
  for (double theta : thresholds) {
    push_crossings(theta, beta_sum_where([&](double t) { return t >= theta; }),
                   beta_sum_where([&](double t) { return t > theta; }), lambda1, breaks);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  return breaks;
}

double oracle_uniform_price(const GainProfile& profile, double lambda1, double tol) {
  profile.validate();
  check_lambda(lambda1);
  require_jammable(profile);

  // Revenue is zero for mu0 >= lambda1 / sigma_e2: each jammed eavesdropper
  // costs at least sigma_e2 mu0 while the follower never spends more than lambda1.
  const double upper = lambda1 / profile.sigma_e2;
  const double lower = 1e-9 * upper;
  constexpr int kGrid = 4000;
  auto revenue = [&](double mu) { return follower_jammer_revenue(profile, lambda1, mu); };

  std::vector<double> grid(kGrid);
  const double ratio = std::log(upper / lower) / (kGrid - 1);
  for (int k = 0; k < kGrid; ++k) grid[k] = lower * std::exp(ratio * k);
  grid.back() = upper;

  int best_k = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < kGrid; ++k) {
    const double value = revenue(grid[k]);
    if (value > best) {
      best = value;
      best_k = k;
    }
  }
  const double lo = grid[std::max(best_k - 1, 0)];
  const double hi = grid[std::min(best_k + 1, kGrid - 1)];
  const double mu = golden_section_maximize<double>(revenue, lo, hi, tol * hi);
  return revenue(mu) >= best ? mu : grid[best_k];
}

UniformPrice optimal_uniform_price(const GainProfile& profile, double lambda1) {
  profile.validate();
  check_lambda(lambda1);
  auto set = require_jammable(profile);
  std::stable_sort(set.begin(), set.end(), [&](std::size_t a, std::size_t b) {
    return profile.unjammed_sinr(a) > profile.unjammed_sinr(b);
  });

  // Between breakpoints the follower jams a fixed top-k set and the revenue is
  // the concave uniform_price_revenue for that set, so the maximum is either
  // the closed-form price of some self-consistent set or a breakpoint.
  UniformPrice best{0.0, false};
  double best_value = -std::numeric_limits<double>::infinity();
  double beta_sum = 0.0;
  for (std::size_t k = 1; k <= set.size(); ++k) {
    beta_sum += profile.beta[set[k - 1]];
    const double mu0 = closed_form_uniform_price(beta_sum, k, profile.sigma_e2, lambda1);
    const auto response =
        solve_fixed_price(profile, PriceVector::uniform(profile.size(), mu0), lambda1);
    std::vector<std::size_t> top(set.begin(), set.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(top.begin(), top.end());
    if (response.on_threshold || response.active_set != top) continue;
    const double value = follower_jammer_revenue(profile, lambda1, mu0);
    if (value > best_value) {
      best_value = value;
      best = {mu0, true};
    }
  }
  for (double mu0 : active_set_breakpoints(profile, lambda1)) {
    const double value = follower_jammer_revenue(profile, lambda1, mu0);
    if (value > best_value + 1e-12 * (1.0 + std::abs(best_value))) {
      best_value = value;
      best = {mu0, false};
    }
  }
  return best;
}

Equilibrium equilibrium_at_price(const GainProfile& profile, double lambda1, double mu0) {
  check_price(mu0);
  const auto prices = PriceVector::uniform(profile.size(), mu0);
  const auto sol = solve_fixed_price(profile, prices, lambda1);

  Equilibrium eq;
  eq.mu0 = mu0;
  eq.powers = sol.powers;
  eq.gamma0 = sol.gamma0;
  eq.active_set = sol.active_set;
  eq.secrecy_rate = secrecy_rate(profile, sol.powers);
  eq.transmitter_revenue = transmitter_revenue(profile, GameParams{lambda1, prices}, sol.powers);
  eq.jammer_revenues.reserve(profile.size());
  for (std::size_t i = 0; i < profile.size(); ++i) {
    eq.jammer_revenues.push_back(jammer_revenue(mu0, profile, i, sol.powers.p[i]));
  }
  eq.total_jammer_revenue = total_jammer_revenue(profile, prices, sol.powers);
  return eq;
}

Equilibrium stackelberg_equilibrium(const GainProfile& profile, double lambda1) {
  const auto price = optimal_uniform_price(profile, lambda1);
  auto eq = equilibrium_at_price(profile, lambda1, price.mu0);
  eq.closed_form_valid = price.closed_form_valid;
  return eq;
}

double DeviationReport::max_violation() const {
  return std::max(max_transmitter_violation, max_jammer_violation);
}

DeviationReport verify_equilibrium(const Equilibrium& eq, const GainProfile& profile,
                                   double lambda1, const std::vector<double>& deltas) {
  const auto prices = PriceVector::uniform(profile.size(), eq.mu0);
  // The follower's payoff as optimized: the rate is not clamped at zero.
  auto follower_payoff = [&](const PowerAllocation& p) {
    return lambda1 * unclamped_secrecy_rate(profile, p) - total_jammer_revenue(profile, prices, p);
  };
  const double base_transmitter = follower_payoff(eq.powers);
  const double base_jammers = total_jammer_revenue(profile, prices, eq.powers);

  auto step_for = [](double x, double delta) { return x > 0.0 ? delta * x : delta; };

  DeviationReport report;
  for (double delta : deltas) {
    if (delta <= 0.0) continue;
    for (double sign : {-1.0, 1.0}) {
      for (std::size_t i = 0; i < profile.size(); ++i) {
        auto p = eq.powers;
        p.p[i] = std::max(0.0, p.p[i] + sign * step_for(p.p[i], delta));
        const double gain = follower_payoff(p) - base_transmitter;
        report.max_transmitter_violation = std::max(report.max_transmitter_violation, gain);
        ++report.deviations_tested;
      }
      const double mu = eq.mu0 + sign * step_for(eq.mu0, delta);
      if (mu > 0.0) {
        const double gain = follower_jammer_revenue(profile, lambda1, mu) - base_jammers;
        report.max_jammer_violation = std::max(report.max_jammer_violation, gain);
        ++report.deviations_tested;
      }
    }
  }
  report.passed = report.max_violation() <= kDeviationTolerance;
  return report;
}

PriceVector oracle_prices_general(const GainProfile& profile, double lambda1,
                                  std::size_t grid_points) {
  profile.validate();
  check_lambda(lambda1);
  const std::size_t n = profile.size();
  if (n > 3) {
    throw Error(ErrorCode::kTooManyEavesdroppers,
                "grid search supports at most 3 eavesdroppers, got " + std::to_string(n));
  }
  if (grid_points < 2) throw Error(ErrorCode::kConfigError, "grid_points must be >= 2");
  require_jammable(profile);

  const double step = lambda1 / profile.sigma_e2 / static_cast<double>(grid_points - 1);
  std::vector<std::size_t> idx(n, 0);
  PriceVector prices{std::vector<double>(n, 0.0)};
  PriceVector best = prices;
  double best_revenue = -std::numeric_limits<double>::infinity();
  double best_spread = std::numeric_limits<double>::infinity();

  for (;;) {
    for (std::size_t i = 0; i < n; ++i) prices.mu[i] = step * static_cast<double>(idx[i]);
    const double value = follower_jammer_revenue(profile, prices, lambda1);
    const auto [lo, hi] = std::minmax_element(prices.mu.begin(), prices.mu.end());
    const double spread = *hi - *lo;
    const double tie = 1e-12 * (1.0 + std::abs(best_revenue));
    if (value > best_revenue + tie || (value >= best_revenue - tie && spread < best_spread)) {
      best_revenue = std::max(best_revenue, value);
      best_spread = spread;
      best = prices;
    }
    std::size_t d = 0;
    while (d < n && ++idx[d] == grid_points) idx[d++] = 0;
    if (d == n) break;
  }
  return best;
}

}  // namespace jamgame

#include "jamgame/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include "jamgame/error.hpp"
#include "jamgame/fixed_price_solver.hpp"

namespace jamgame {

namespace {

void config_error(const std::string& what) { throw Error(ErrorCode::kConfigError, what); }

double max_abs_gap(const std::vector<double>& a, const std::vector<double>& b) {
  double gap = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) gap = std::max(gap, std::abs(a[i] - b[i]));
  return gap;
}

}  // namespace

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::kFixedPrice: return "fixed_price";
    case Mode::kEquilibrium: return "equilibrium";
    case Mode::kMonteCarlo: return "monte_carlo";
  }
  return "unknown";
}

Mode mode_from_string(std::string_view name) {
  if (name == "fixed_price" || name == "fixed") return Mode::kFixedPrice;
  if (name == "equilibrium") return Mode::kEquilibrium;
  if (name == "monte_carlo" || name == "montecarlo") return Mode::kMonteCarlo;
  config_error("unknown mode '" + std::string(name) + "'");
  return Mode::kFixedPrice;
}

void ExperimentConfig::validate() const {
  if (n_t == 0) config_error("n_t must be positive");
  if (n_eves == 0) config_error("n_eves must be positive");
  auto positive = [](double x) { return x > 0.0 && std::isfinite(x); };
  if (!positive(sigma2)) config_error("sigma2 must be positive");
  if (!positive(sigma_e2)) config_error("sigma_e2 must be positive");
  if (!positive(lambda1)) config_error("lambda1 must be positive");
  if (!positive(total_power)) config_error("total_power must be positive");
  if (!positive(tol)) config_error("tol must be positive");
  if (threads == 0) config_error("threads must be positive");
  if (mode == Mode::kFixedPrice) {
    if (!prices) config_error("fixed-price mode needs prices");
    if (prices->size() != n_eves) {
      config_error("got " + std::to_string(prices->size()) + " prices for " +
                   std::to_string(n_eves) + " eavesdroppers");
    }
    for (double mu : prices->mu) {
      if (!(mu >= 0.0) || !std::isfinite(mu)) config_error("prices must be finite and >= 0");
    }
  }
}

GainProfile trial_profile(const ExperimentConfig& config, std::size_t trial) {
  const auto channels = generate_channels(trial_seed(config.seed, trial), config.n_t, config.n_eves);
  const auto beamformer = mrt_beamformer(channels, config.total_power);
  return gain_profile(channels, beamformer, config.sigma2, config.sigma_e2);
}

void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& body) {
  std::vector<std::exception_ptr> errors(n);
  auto run = [&](std::size_t i) {
    try {
      body(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  const std::size_t workers = std::min(std::max<std::size_t>(threads, 1), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) run(i);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < n; i += workers) run(i);
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<FixedPriceRow> run_fixed_price(const ExperimentConfig& config) {
  config.validate();
  if (config.mode != Mode::kFixedPrice) config_error("run_fixed_price needs mode fixed_price");
  std::vector<FixedPriceRow> rows(config.trials);
  parallel_for(config.trials, config.threads, [&](std::size_t t) {
    const auto profile = trial_profile(config, t);
    const auto closed = solve_fixed_price(profile, *config.prices, config.lambda1);
    const auto oracle = oracle_fixed_price(profile, *config.prices, config.lambda1);

    FixedPriceRow& row = rows[t];
    row.channel_id = t + 1;
    row.power_derivation = closed.powers.p;
    row.power_simulation = oracle.powers.p;
    row.secrecy_derivation = secrecy_rate(profile, closed.powers);
    row.secrecy_simulation = secrecy_rate(profile, oracle.powers);
    row.revenue_derivation = closed.revenue;
    row.revenue_simulation = oracle.revenue;
    const double gap = std::max({max_abs_gap(row.power_derivation, row.power_simulation),
                                 std::abs(row.secrecy_derivation - row.secrecy_simulation),
                                 std::abs(row.revenue_derivation - row.revenue_simulation)});
    row.flagged = !(gap <= config.tol);
  });
  return rows;
}

std::vector<EquilibriumRow> run_equilibrium(const ExperimentConfig& config) {
  config.validate();
  if (config.mode != Mode::kEquilibrium) config_error("run_equilibrium needs mode equilibrium");
  std::vector<EquilibriumRow> rows(config.trials);
  parallel_for(config.trials, config.threads, [&](std::size_t t) {
    const auto profile = trial_profile(config, t);
    const double lambda1 = config.lambda1;

    EquilibriumRow& row = rows[t];
    row.channel_id = t + 1;
    row.equilibrium = stackelberg_equilibrium(profile, lambda1);
    row.price_derivation = row.equilibrium.mu0;
    row.jammer_revenue_derivation = row.equilibrium.total_jammer_revenue;
    row.price_simulation = oracle_uniform_price(profile, lambda1);
    row.jammer_revenue_simulation = follower_jammer_revenue(profile, lambda1, row.price_simulation);
    row.max_violation = verify_equilibrium(row.equilibrium, profile, lambda1).max_violation();

    const auto& eq = row.equilibrium;
    row.secrecy_clamped = unclamped_secrecy_rate(profile, eq.powers) <= 0.0;
    row.accounting_error = std::abs(eq.transmitter_revenue + eq.total_jammer_revenue -
                                    lambda1 * secrecy_rate(profile, eq.powers));

    const double price_gap =
        std::abs(row.price_derivation - row.price_simulation) / row.price_simulation;
    const double revenue_gap =
        std::abs(row.jammer_revenue_derivation - row.jammer_revenue_simulation);
    row.flagged = !(price_gap <= config.tol) || !(revenue_gap <= config.tol) ||
                  !(row.max_violation <= kDeviationTolerance);
  });
  return rows;
}

Statistic summarize(const std::vector<double>& values) {
  Statistic s;
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  double sq = 0.0;
  for (double v : values) sq += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(sq / static_cast<double>(values.size()));
  return s;
}

MonteCarloSummary run_monte_carlo(const ExperimentConfig& config) {
  config.validate();
  if (config.mode != Mode::kMonteCarlo) config_error("run_monte_carlo needs mode monte_carlo");
  std::vector<Equilibrium> results(config.trials);
  parallel_for(config.trials, config.threads, [&](std::size_t t) {
    results[t] = stackelberg_equilibrium(trial_profile(config, t), config.lambda1);
  });

  std::vector<double> rate, transmitter, price, jammers;
  MonteCarloSummary summary;
  summary.trials = config.trials;
  for (const auto& eq : results) {
    rate.push_back(eq.secrecy_rate);
    transmitter.push_back(eq.transmitter_revenue);
    price.push_back(eq.mu0);
    jammers.push_back(eq.total_jammer_revenue);
    if (!eq.closed_form_valid) ++summary.closed_form_fallbacks;
  }
  summary.secrecy_rate = summarize(rate);
  summary.transmitter_revenue = summarize(transmitter);
  summary.mu0 = summarize(price);
  summary.total_jammer_revenue = summarize(jammers);
  return summary;
}

}  // namespace jamgame

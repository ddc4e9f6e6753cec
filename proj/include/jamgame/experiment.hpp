#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jamgame/channel_model.hpp"
#include "jamgame/equilibrium_solver.hpp"
#include "jamgame/game_core.hpp"

namespace jamgame {

enum class Mode { kFixedPrice, kEquilibrium, kMonteCarlo };

std::string_view to_string(Mode mode);
Mode mode_from_string(std::string_view name);  // throws ConfigError

/// Seeded experiment description. Defaults reproduce the two-eavesdropper,
/// three-antenna setup with all noise variances at 0.1, lambda1 = 5 and fixed
/// prices (1, 3).
struct ExperimentConfig {
  std::uint64_t seed = 1;
  std::size_t trials = 5;
  std::size_t n_t = 3;
  std::size_t n_eves = 2;
  double sigma2 = 0.1;
  double sigma_e2 = 0.1;
  double lambda1 = 5.0;
  std::optional<PriceVector> prices = PriceVector{{1.0, 3.0}};
  double total_power = 1.0;
  Mode mode = Mode::kFixedPrice;
  double tol = 1e-3;         // closed-form vs oracle agreement per row
  std::size_t threads = 1;

  /// Throws Error(kConfigError).
  void validate() const;
};

/// Gain profile of trial `trial` (0-based) under the config's channel model.
GainProfile trial_profile(const ExperimentConfig& config, std::size_t trial);

/// One row of a fixed-price report: closed form ("derivation") next to the
/// numerical oracle ("simulation").
struct FixedPriceRow {
  std::size_t channel_id = 0;
  std::vector<double> power_derivation;
  std::vector<double> power_simulation;
  double secrecy_derivation = 0.0;
  double secrecy_simulation = 0.0;
  double revenue_derivation = 0.0;
  double revenue_simulation = 0.0;
  bool flagged = false;  // some pair disagrees by more than config.tol
};

struct EquilibriumRow {
  std::size_t channel_id = 0;
  double price_derivation = 0.0;
  double price_simulation = 0.0;
  double jammer_revenue_derivation = 0.0;
  double jammer_revenue_simulation = 0.0;
  Equilibrium equilibrium;
  double max_violation = 0.0;     // from verify_equilibrium
  double accounting_error = 0.0;  // |psi + sum phi - lambda1 R|
  bool secrecy_clamped = false;   // beta0 <= gamma0; follower optimum ignores the clamp
  bool flagged = false;
};

struct Statistic {
  double mean = 0.0;
  double stddev = 0.0;  // population
};

struct MonteCarloSummary {
  std::size_t trials = 0;
  Statistic secrecy_rate;
  Statistic transmitter_revenue;
  Statistic mu0;
  Statistic total_jammer_revenue;
  std::size_t closed_form_fallbacks = 0;
};

std::vector<FixedPriceRow> run_fixed_price(const ExperimentConfig& config);
std::vector<EquilibriumRow> run_equilibrium(const ExperimentConfig& config);
MonteCarloSummary run_monte_carlo(const ExperimentConfig& config);

Statistic summarize(const std::vector<double>& values);

/// Runs body(i) for i in [0, n) on up to `threads` workers. The first
/// exception by index is rethrown after all workers join.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& body);

}  // namespace jamgame

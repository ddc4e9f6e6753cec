// jamgame: seeded experiment runner for the jammer pricing game.
//
//   jamgame fixed       --trials 5 [--mu 1,3]   closed form vs oracle, fixed prices
//   jamgame equilibrium --trials 5               uniform-price Stackelberg equilibrium
//   jamgame montecarlo  --trials 1000            equilibrium statistics over channels
//
// Exit codes: 0 success, 1 solver error, 2 configuration error,
// 3 some closed-form/oracle pair or deviation test exceeded its tolerance.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "jamgame/error.hpp"
#include "jamgame/experiment.hpp"
#include "jamgame/serialization.hpp"

namespace {

constexpr int kExitSolver = 1;
constexpr int kExitConfig = 2;
constexpr int kExitFlagged = 3;

struct Options {
  std::string config_path;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t n_t = 0;
  std::size_t n_eves = 0;
  double sigma2 = 0.0;
  double sigma_e2 = 0.0;
  double lambda1 = 0.0;
  std::vector<double> mu;
  double power = 0.0;
  double tol = 0.0;
  std::size_t threads = 0;
  std::string out;
  std::string format = "csv";
};

struct Bound {
  CLI::App* app = nullptr;
  Options opts;
};

void add_options(Bound& b) {
  auto* app = b.app;
  auto& o = b.opts;
  app->add_option("--config", o.config_path, "JSON config file; explicit flags override it")
      ->check(CLI::ExistingFile);
  app->add_option("--seed", o.seed, "Base RNG seed");
  app->add_option("--trials", o.trials, "Number of channel realizations");
  app->add_option("--nt", o.n_t, "Transmit antennas");
  app->add_option("--eves", o.n_eves, "Eavesdroppers (one dedicated jammer each)");
  app->add_option("--sigma2", o.sigma2, "Legitimate-user noise variance");
  app->add_option("--sigma-e2", o.sigma_e2, "Eavesdropper noise variance");
  app->add_option("--lambda1", o.lambda1, "Unit price of secrecy rate");
  app->add_option("--mu", o.mu, "Fixed interference prices, comma separated")->delimiter(',');
  app->add_option("--power", o.power, "Transmit beamformer power");
  app->add_option("--tol", o.tol, "Closed-form vs oracle agreement tolerance");
  app->add_option("--threads", o.threads, "Worker threads");
  app->add_option("--out", o.out, "Output path (default: stdout)");
  app->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

jamgame::ExperimentConfig build_config(const Bound& b, jamgame::Mode mode) {
  jamgame::ExperimentConfig config;
  const auto& o = b.opts;
  auto given = [&](const char* name) { return b.app->count(name) > 0; };

  if (given("--config")) {
    std::ifstream in(o.config_path);
    jamgame::Json j;
    try {
      in >> j;
    } catch (const jamgame::Json::exception& e) {
      throw jamgame::Error(jamgame::ErrorCode::kConfigError,
                           std::string("cannot parse ") + o.config_path + ": " + e.what());
    }
    j.get_to(config);
  }
  config.mode = mode;
  if (given("--seed")) config.seed = o.seed;
  if (given("--trials")) config.trials = o.trials;
  if (given("--nt")) config.n_t = o.n_t;
  if (given("--eves")) config.n_eves = o.n_eves;
  if (given("--sigma2")) config.sigma2 = o.sigma2;
  if (given("--sigma-e2")) config.sigma_e2 = o.sigma_e2;
  if (given("--lambda1")) config.lambda1 = o.lambda1;
  if (given("--mu")) config.prices = jamgame::PriceVector{o.mu};
  if (given("--power")) config.total_power = o.power;
  if (given("--tol")) config.tol = o.tol;
  if (given("--threads")) config.threads = o.threads;
  config.validate();
  return config;
}

int emit(const Bound& b, const std::string& text) {
  if (b.opts.out.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream file(b.opts.out, std::ios::binary | std::ios::trunc);
  if (!file) {
    std::cerr << "cannot open " << b.opts.out << " for writing\n";
    return kExitConfig;
  }
  file << text;
  return 0;
}

template <typename Rows>
bool any_flagged(const Rows& rows) {
  for (const auto& r : rows) {
    if (r.flagged) return true;
  }
  return false;
}

int run(const Bound& b, jamgame::Mode mode) {
  const auto config = build_config(b, mode);
  const bool json = b.opts.format == "json";
  std::ostringstream out;
  bool flagged = false;

  switch (mode) {
    case jamgame::Mode::kFixedPrice: {
      const auto rows = jamgame::run_fixed_price(config);
      flagged = any_flagged(rows);
      if (json) {
        out << jamgame::Json{{"config", config}, {"rows", rows}}.dump(2) << '\n';
      } else {
        jamgame::write_csv(out, rows, config.n_eves);
      }
      break;
    }
    case jamgame::Mode::kEquilibrium: {
      const auto rows = jamgame::run_equilibrium(config);
      flagged = any_flagged(rows);
      if (json) {
        out << jamgame::Json{{"config", config}, {"rows", rows}}.dump(2) << '\n';
      } else {
        jamgame::write_csv(out, rows, config.n_eves);
      }
      break;
    }
    case jamgame::Mode::kMonteCarlo: {
      const auto summary = jamgame::run_monte_carlo(config);
      if (json) {
        out << jamgame::Json{{"config", config}, {"summary", summary}}.dump(2) << '\n';
      } else {
        jamgame::write_csv(out, summary);
      }
      break;
    }
  }
  if (const int rc = emit(b, out.str()); rc != 0) return rc;
  return flagged ? kExitFlagged : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stackelberg pricing game between a multicast transmitter and private jammers"};
  app.require_subcommand(1);

  Bound fixed{app.add_subcommand("fixed", "Fixed interference prices: closed form vs oracle"), {}};
  Bound equilibrium{app.add_subcommand("equilibrium", "Uniform-price Stackelberg equilibrium"), {}};
  Bound montecarlo{app.add_subcommand("montecarlo", "Equilibrium statistics over channels"), {}};
  for (Bound* b : {&fixed, &equilibrium, &montecarlo}) add_options(*b);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*fixed.app) return run(fixed, jamgame::Mode::kFixedPrice);
    if (*equilibrium.app) return run(equilibrium, jamgame::Mode::kEquilibrium);
    return run(montecarlo, jamgame::Mode::kMonteCarlo);
  } catch (const jamgame::Error& e) {
    std::cerr << "jamgame: " << e.what() << '\n';
    return e.code() == jamgame::ErrorCode::kConfigError ? kExitConfig : kExitSolver;
  }
}

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include "jamgame/error.hpp"
#include "jamgame/experiment.hpp"
#include "jamgame/serialization.hpp"

namespace jamgame {
namespace {

ExperimentConfig config_for(Mode mode) {
  ExperimentConfig c;
  c.mode = mode;
  return c;
}

std::string csv_of(const std::vector<FixedPriceRow>& rows, std::size_t n_eves) {
  std::ostringstream out;
  write_csv(out, rows, n_eves);
  return out.str();
}

std::string csv_of(const std::vector<EquilibriumRow>& rows, std::size_t n_eves) {
  std::ostringstream out;
  write_csv(out, rows, n_eves);
  return out.str();
}

void expect_config_error(const ExperimentConfig& c) {
  try {
    c.validate();
    FAIL() << "expected ConfigError";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfigError);
  }
}

TEST(RunFixedPrice, DefaultReportAgrees) {
  const auto rows = run_fixed_price(config_for(Mode::kFixedPrice));
  ASSERT_EQ(rows.size(), 5u);
  for (std::size_t t = 0; t < rows.size(); ++t) {
    const auto& r = rows[t];
    EXPECT_EQ(r.channel_id, t + 1);
    EXPECT_FALSE(r.flagged);
    for (std::size_t i = 0; i < 2; ++i) EXPECT_NEAR(r.power_derivation[i], r.power_simulation[i], 1e-3);
    EXPECT_NEAR(r.secrecy_derivation, r.secrecy_simulation, 1e-3);
    EXPECT_NEAR(r.revenue_derivation, r.revenue_simulation, 1e-3);
  }
}

TEST(RunFixedPrice, ZeroTrials) {
  auto c = config_for(Mode::kFixedPrice);
  c.trials = 0;
  const auto rows = run_fixed_price(c);
  EXPECT_TRUE(rows.empty());
  const std::string csv = csv_of(rows, 2);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1);
}

TEST(RunFixedPrice, Reproducible) {
  auto c = config_for(Mode::kFixedPrice);
  EXPECT_EQ(csv_of(run_fixed_price(c), 2), csv_of(run_fixed_price(c), 2));
  c.threads = 4;
  c.trials = 13;
  auto serial = c;
  serial.threads = 1;
  EXPECT_EQ(csv_of(run_fixed_price(c), 2), csv_of(run_fixed_price(serial), 2));
}

TEST(RunFixedPrice, CsvLayout) {
  const std::string csv = csv_of(run_fixed_price(config_for(Mode::kFixedPrice)), 2);
  std::istringstream in(csv);
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  EXPECT_EQ(header.rfind("channel,p1_derivation,p1_simulation,p2_derivation,p2_simulation", 0), 0u);
  EXPECT_EQ(std::count(header.begin(), header.end(), ','), std::count(first.begin(), first.end(), ','));
  // Six decimals on every real column.
  std::istringstream fields(first);
  std::string field;
  std::getline(fields, field, ',');
  EXPECT_EQ(field, "1");
  std::getline(fields, field, ',');
  EXPECT_EQ(field.size() - field.find('.') - 1, 6u);
}

TEST(RunEquilibrium, DefaultReport) {
  auto c = config_for(Mode::kEquilibrium);
  const auto rows = run_equilibrium(c);
  ASSERT_EQ(rows.size(), 5u);
  for (const auto& r : rows) {
    EXPECT_FALSE(r.flagged);
    EXPECT_LE(std::abs(r.price_derivation - r.price_simulation), 1e-3 * r.price_simulation);
    EXPECT_NEAR(r.jammer_revenue_derivation, r.jammer_revenue_simulation, 1e-3);
    EXPECT_LE(r.max_violation, 1e-9);
    EXPECT_LE(r.accounting_error, 1e-12);
  }
}

TEST(RunEquilibrium, ManyTrials) {
  auto c = config_for(Mode::kEquilibrium);
  c.trials = 100;
  c.threads = 4;
  std::size_t clamped = 0;
  for (const auto& r : run_equilibrium(c)) {
    EXPECT_FALSE(r.flagged) << "channel " << r.channel_id;
    EXPECT_LE(r.accounting_error, 1e-12);
    if (r.secrecy_clamped) {
      ++clamped;
      EXPECT_EQ(r.equilibrium.secrecy_rate, 0.0);
    }
  }
  EXPECT_LT(clamped, 100u);
}

TEST(RunEquilibrium, ThreadInvariantCsv) {
  auto c = config_for(Mode::kEquilibrium);
  c.trials = 9;
  auto parallel = c;
  parallel.threads = 3;
  EXPECT_EQ(csv_of(run_equilibrium(c), 2), csv_of(run_equilibrium(parallel), 2));
}

TEST(RunMonteCarlo, SingleTrialHasZeroSpread) {
  auto c = config_for(Mode::kMonteCarlo);
  c.trials = 1;
  const auto s = run_monte_carlo(c);
  EXPECT_EQ(s.trials, 1u);
  EXPECT_EQ(s.mu0.stddev, 0.0);
  EXPECT_EQ(s.secrecy_rate.stddev, 0.0);
  EXPECT_GT(s.mu0.mean, 0.0);
}

TEST(RunMonteCarlo, ThreadInvariant) {
  auto c = config_for(Mode::kMonteCarlo);
  c.trials = 40;
  auto parallel = c;
  parallel.threads = 8;
  const auto a = run_monte_carlo(c);
  const auto b = run_monte_carlo(parallel);
  EXPECT_EQ(a.mu0.mean, b.mu0.mean);
  EXPECT_EQ(a.secrecy_rate.stddev, b.secrecy_rate.stddev);
  EXPECT_EQ(a.closed_form_fallbacks, b.closed_form_fallbacks);
}

TEST(RunMonteCarlo, PriceScalesWithLambda) {
  auto c = config_for(Mode::kMonteCarlo);
  c.trials = 20;
  auto doubled = c;
  doubled.lambda1 *= 2.0;
  const auto a = run_monte_carlo(c);
  const auto b = run_monte_carlo(doubled);
  EXPECT_NEAR(b.mu0.mean, 2.0 * a.mu0.mean, 1e-9 * b.mu0.mean);
  EXPECT_NEAR(b.secrecy_rate.mean, a.secrecy_rate.mean, 1e-9);
}

TEST(Summarize, PopulationStatistics) {
  const auto s = summarize({1.0, 2.0, 3.0, 4.0});
  EXPECT_DOUBLE_EQ(s.mean, 2.5);
  EXPECT_DOUBLE_EQ(s.stddev, std::sqrt(1.25));
  EXPECT_EQ(summarize({}).mean, 0.0);
}

TEST(ParallelFor, RethrowsFirstFailureByIndex) {
  try {
    parallel_for(10, 4, [](std::size_t i) {
      if (i == 3 || i == 7) throw std::runtime_error(std::to_string(i));
    });
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "3");
  }
}

TEST(ExperimentConfig, Validation) {
  EXPECT_NO_THROW(config_for(Mode::kFixedPrice).validate());
  auto c = config_for(Mode::kFixedPrice);
  c.n_eves = 3;
  expect_config_error(c);
  c = config_for(Mode::kFixedPrice);
  c.sigma_e2 = 0.0;
  expect_config_error(c);
  c = config_for(Mode::kFixedPrice);
  c.prices = PriceVector{{1.0, -1.0}};
  expect_config_error(c);
  c = config_for(Mode::kFixedPrice);
  c.prices.reset();
  expect_config_error(c);
  c.mode = Mode::kEquilibrium;  // prices are not needed here
  c.n_eves = 3;
  EXPECT_NO_THROW(c.validate());
  c.lambda1 = std::nan("");
  expect_config_error(c);
  c = config_for(Mode::kEquilibrium);
  c.n_t = 0;
  expect_config_error(c);
}

TEST(ExperimentConfig, JsonRoundTrip) {
  ExperimentConfig c;
  c.seed = 99;
  c.trials = 7;
  c.n_eves = 3;
  c.prices = PriceVector{{0.5, 1.5, 2.5}};
  c.mode = Mode::kMonteCarlo;
  c.lambda1 = 2.5;
  const ExperimentConfig back = Json(c).get<ExperimentConfig>();
  EXPECT_EQ(Json(back), Json(c));

  const auto partial = Json::parse(R"({"seed": 4, "lambda1": 3})").get<ExperimentConfig>();
  EXPECT_EQ(partial.seed, 4u);
  EXPECT_EQ(partial.lambda1, 3.0);
  EXPECT_EQ(partial.trials, ExperimentConfig{}.trials);
}

TEST(ExperimentConfig, JsonErrors) {
  for (const char* text : {R"({"sede": 4})", R"({"trials": "many"})", R"([1, 2])",
                           R"({"mode": "sideways"})"}) {
    try {
      Json::parse(text).get<ExperimentConfig>();
      FAIL() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kConfigError) << text;
    }
  }
}

TEST(Mode, Names) {
  for (Mode m : {Mode::kFixedPrice, Mode::kEquilibrium, Mode::kMonteCarlo}) {
    EXPECT_EQ(mode_from_string(to_string(m)), m);
  }
  EXPECT_EQ(mode_from_string("fixed"), Mode::kFixedPrice);
  EXPECT_THROW(mode_from_string("nope"), Error);
}

#ifdef JAMGAME_CLI

struct CliResult {
  int exit_code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const std::string command = std::string(JAMGAME_CLI) + " " + args + " 2>/dev/null";
  CliResult result;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return result;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) result.out.append(buf.data(), n);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::size_t line_count(const std::string& s) { return std::count(s.begin(), s.end(), '\n'); }

TEST(Cli, FixedCsv) {
  const auto r = run_cli("fixed --trials 5");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(line_count(r.out), 6u);
  EXPECT_EQ(r.out, csv_of(run_fixed_price(config_for(Mode::kFixedPrice)), 2));
}

TEST(Cli, EquilibriumJson) {
  const auto r = run_cli("equilibrium --trials 3 --format json");
  EXPECT_EQ(r.exit_code, 0);
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j.at("config").at("trials"), 3);
  ASSERT_EQ(j.at("rows").size(), 3u);
  EXPECT_TRUE(j.at("rows")[0].at("equilibrium").contains("mu0"));
}

TEST(Cli, MonteCarlo) {
  const auto r = run_cli("montecarlo --trials 10 --threads 2");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out.rfind("metric,mean,std\n", 0), 0u);
}

TEST(Cli, ConfigErrorsExitTwo) {
  EXPECT_EQ(run_cli("fixed --eves 3").exit_code, 2);
  EXPECT_EQ(run_cli("fixed --sigma2 -1").exit_code, 2);
  EXPECT_EQ(run_cli("fixed --format xml").exit_code, 2);
  EXPECT_EQ(run_cli("fixed --config /nonexistent/config.json").exit_code, 2);
}

TEST(Cli, TightToleranceExitsThree) {
  EXPECT_EQ(run_cli("fixed --trials 5 --tol 1e-300").exit_code, 3);
}

TEST(Cli, ConfigFileWithOverride) {
  const auto dir = std::filesystem::temp_directory_path() / "jamgame_cli_test";
  std::filesystem::create_directories(dir);
  const auto config = dir / "config.json";
  const auto out = dir / "report.csv";
  std::ofstream(config) << R"({"seed": 11, "trials": 2, "n_eves": 3, "prices": [1, 2, 3]})";

  auto r = run_cli("fixed --config " + config.string() + " --trials 4 --out " + out.string());
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(out);
  const std::string written((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  auto c = config_for(Mode::kFixedPrice);
  c.seed = 11;
  c.trials = 4;
  c.n_eves = 3;
  c.prices = PriceVector{{1, 2, 3}};
  EXPECT_EQ(written, csv_of(run_fixed_price(c), 3));
  std::filesystem::remove_all(dir);
}

#endif

}  // namespace
}  // namespace jamgame

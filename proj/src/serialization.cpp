#include "jamgame/serialization.hpp"

#include <iomanip>
#include <set>
#include <string>

#include "jamgame/error.hpp"

namespace jamgame {

namespace {

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw Error(ErrorCode::kDimensionMismatch, "complex values must be [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Json vector_to_json(const ComplexVector& v) {
  Json out = Json::array();
  for (const auto& z : v) out.push_back(complex_to_json(z));
  return out;
}

ComplexVector vector_from_json(const Json& j) {
  ComplexVector out;
  for (const auto& z : j) out.push_back(complex_from_json(z));
  return out;
}

// Six-decimal fixed formatting for every CSV number.
struct Fixed6 {
  double value;
};

std::ostream& operator<<(std::ostream& out, Fixed6 x) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::fixed << std::setprecision(6) << x.value;
  out.flags(flags);
  out.precision(precision);
  return out;
}

}  // namespace

void to_json(Json& j, const ChannelSet& channels) {
  Json g = Json::array();
  for (const auto& gl : channels.g) g.push_back(vector_to_json(gl));
  j = Json{{"h1", vector_to_json(channels.h1)},
           {"g", g},
           {"gj", vector_to_json(channels.gj)},
           {"n_t", channels.n_t},
           {"n_eves", channels.n_eves}};
}

void from_json(const Json& j, ChannelSet& channels) {
  try {
    channels.h1 = vector_from_json(j.at("h1"));
    channels.g.clear();
    for (const auto& gl : j.at("g")) channels.g.push_back(vector_from_json(gl));
    channels.gj = vector_from_json(j.at("gj"));
    channels.n_t = j.at("n_t").get<std::size_t>();
    channels.n_eves = j.at("n_eves").get<std::size_t>();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kDimensionMismatch, std::string("malformed channel set: ") + e.what());
  }
  channels.validate();
}

void to_json(Json& j, const GainProfile& profile) {
  j = Json{{"beta0", profile.beta0},       {"beta", profile.beta},
           {"alpha", profile.alpha},       {"sigma_e2", profile.sigma_e2},
           {"sigma2", profile.sigma2}};
}

void from_json(const Json& j, GainProfile& profile) {
  try {
    profile.beta0 = j.at("beta0").get<double>();
    profile.beta = j.at("beta").get<std::vector<double>>();
    profile.alpha = j.at("alpha").get<std::vector<double>>();
    profile.sigma_e2 = j.value("sigma_e2", 0.1);
    profile.sigma2 = j.value("sigma2", 0.1);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kDimensionMismatch, std::string("malformed gain profile: ") + e.what());
  }
  profile.validate();
}

void to_json(Json& j, const FixedPriceSolution& sol) {
  j = Json{{"gamma0", sol.gamma0},
           {"powers", sol.powers.p},
           {"active_set", sol.active_set},
           {"revenue", sol.revenue},
           {"concavity_ok", sol.concavity_ok},
           {"on_threshold", sol.on_threshold},
           {"secrecy_clamped", sol.secrecy_clamped}};
}

void to_json(Json& j, const Equilibrium& eq) {
  j = Json{{"mu0", eq.mu0},
           {"powers", eq.powers.p},
           {"gamma0", eq.gamma0},
           {"active_set", eq.active_set},
           {"secrecy_rate", eq.secrecy_rate},
           {"transmitter_revenue", eq.transmitter_revenue},
           {"jammer_revenues", eq.jammer_revenues},
           {"total_jammer_revenue", eq.total_jammer_revenue},
           {"closed_form_valid", eq.closed_form_valid}};
}

void to_json(Json& j, const DeviationReport& report) {
  j = Json{{"max_transmitter_violation", report.max_transmitter_violation},
           {"max_jammer_violation", report.max_jammer_violation},
           {"deviations_tested", report.deviations_tested},
           {"passed", report.passed}};
}

void to_json(Json& j, const ExperimentConfig& config) {
  j = Json{{"seed", config.seed},       {"trials", config.trials},
           {"n_t", config.n_t},         {"n_eves", config.n_eves},
           {"sigma2", config.sigma2},   {"sigma_e2", config.sigma_e2},
           {"lambda1", config.lambda1}, {"total_power", config.total_power},
           {"mode", to_string(config.mode)}, {"tol", config.tol},
           {"threads", config.threads}};
  j["prices"] = config.prices ? Json(config.prices->mu) : Json(nullptr);
}

void from_json(const Json& j, ExperimentConfig& config) {
  static const std::set<std::string> known = {"seed",     "trials",  "n_t",         "n_eves",
                                              "sigma2",   "sigma_e2", "lambda1",    "prices",
                                              "total_power", "mode", "tol",         "threads"};
  if (!j.is_object()) throw Error(ErrorCode::kConfigError, "config must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (!known.contains(key)) throw Error(ErrorCode::kConfigError, "unknown config key '" + key + "'");
    }
    config.seed = j.value("seed", config.seed);
    config.trials = j.value("trials", config.trials);
    config.n_t = j.value("n_t", config.n_t);
    config.n_eves = j.value("n_eves", config.n_eves);
    config.sigma2 = j.value("sigma2", config.sigma2);
    config.sigma_e2 = j.value("sigma_e2", config.sigma_e2);
    config.lambda1 = j.value("lambda1", config.lambda1);
    config.total_power = j.value("total_power", config.total_power);
    config.tol = j.value("tol", config.tol);
    config.threads = j.value("threads", config.threads);
    if (j.contains("mode")) config.mode = mode_from_string(j.at("mode").get<std::string>());
    if (j.contains("prices")) {
      if (j.at("prices").is_null()) {
        config.prices.reset();
      } else {
        config.prices = PriceVector{j.at("prices").get<std::vector<double>>()};
      }
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kConfigError, std::string("malformed config: ") + e.what());
  }
}

void to_json(Json& j, const FixedPriceRow& row) {
  j = Json{{"channel_id", row.channel_id},
           {"power_derivation", row.power_derivation},
           {"power_simulation", row.power_simulation},
           {"secrecy_rate_derivation", row.secrecy_derivation},
           {"secrecy_rate_simulation", row.secrecy_simulation},
           {"revenue_derivation", row.revenue_derivation},
           {"revenue_simulation", row.revenue_simulation},
           {"flag", row.flagged}};
}

void to_json(Json& j, const EquilibriumRow& row) {
  j = Json{{"channel_id", row.channel_id},
           {"price_derivation", row.price_derivation},
           {"price_simulation", row.price_simulation},
           {"jammer_revenue_derivation", row.jammer_revenue_derivation},
           {"jammer_revenue_simulation", row.jammer_revenue_simulation},
           {"equilibrium", row.equilibrium},
           {"max_violation", row.max_violation},
           {"accounting_error", row.accounting_error},
           {"secrecy_clamped", row.secrecy_clamped},
           {"flag", row.flagged}};
}

void to_json(Json& j, const MonteCarloSummary& summary) {
  auto stat = [](const Statistic& s) { return Json{{"mean", s.mean}, {"std", s.stddev}}; };
  j = Json{{"trials", summary.trials},
           {"secrecy_rate", stat(summary.secrecy_rate)},
           {"transmitter_revenue", stat(summary.transmitter_revenue)},
           {"mu0", stat(summary.mu0)},
           {"total_jammer_revenue", stat(summary.total_jammer_revenue)},
           {"closed_form_fallbacks", summary.closed_form_fallbacks}};
}

void write_csv(std::ostream& out, const std::vector<FixedPriceRow>& rows, std::size_t n_eves) {
  out << "channel";
  for (std::size_t i = 1; i <= n_eves; ++i) {
    out << ",p" << i << "_derivation,p" << i << "_simulation";
  }
  out << ",secrecy_rate_derivation,secrecy_rate_simulation"
         ",revenue_derivation,revenue_simulation,flag\n";
  for (const auto& row : rows) {
    out << row.channel_id;
    for (std::size_t i = 0; i < n_eves; ++i) {
      out << ',' << Fixed6{row.power_derivation.at(i)} << ',' << Fixed6{row.power_simulation.at(i)};
    }
    out << ',' << Fixed6{row.secrecy_derivation} << ',' << Fixed6{row.secrecy_simulation} << ','
        << Fixed6{row.revenue_derivation} << ',' << Fixed6{row.revenue_simulation} << ','
        << (row.flagged ? 1 : 0) << '\n';
  }
}

void write_csv_row(std::ostream& out, const EquilibriumRow& row) {
  const auto& eq = row.equilibrium;
  out << row.channel_id << ',' << Fixed6{row.price_derivation} << ','
      << Fixed6{row.price_simulation} << ',' << Fixed6{row.jammer_revenue_derivation} << ','
      << Fixed6{row.jammer_revenue_simulation};
  for (double p : eq.powers.p) out << ',' << Fixed6{p};
  out << ',' << Fixed6{eq.mu0} << ',' << Fixed6{eq.gamma0} << ',' << Fixed6{eq.secrecy_rate}
      << ',' << Fixed6{eq.transmitter_revenue} << ',' << Fixed6{row.max_violation} << ',' << (eq.closed_form_valid ? 1 : 0) << ','
      << (row.secrecy_clamped ? 1 : 0) << ','
      << (row.flagged ? 1 : 0) << '\n';
}

void write_csv(std::ostream& out, const std::vector<EquilibriumRow>& rows, std::size_t n_eves) {
  out << "channel,price_derivation,price_simulation"
         ",jammer_revenue_derivation,jammer_revenue_simulation";
  for (std::size_t i = 1; i <= n_eves; ++i) out << ",p" << i << "_star";
  out << ",mu0_star,gamma0,secrecy_rate,transmitter_revenue,max_violation,closed_form,clamped,flag\n";
  for (const auto& row : rows) write_csv_row(out, row);
}

void write_csv(std::ostream& out, const MonteCarloSummary& summary) {
  out << "metric,mean,std\n";
  auto line = [&](const char* name, const Statistic& s) {
    out << name << ',' << Fixed6{s.mean} << ',' << Fixed6{s.stddev} << '\n';
  };
  line("secrecy_rate", summary.secrecy_rate);
  line("transmitter_revenue", summary.transmitter_revenue);
  line("mu0", summary.mu0);
  line("total_jammer_revenue", summary.total_jammer_revenue);
}

}  // namespace jamgame

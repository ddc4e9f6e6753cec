#pragma once

#include <ostream>
#include <vector>

#include "json.hpp"

#include "jamgame/channel_model.hpp"
#include "jamgame/equilibrium_solver.hpp"
#include "jamgame/experiment.hpp"
#include "jamgame/fixed_price_solver.hpp"

namespace jamgame {

using Json = nlohmann::json;

// Complex numbers are written as [re, im].
void to_json(Json& j, const ChannelSet& channels);
void from_json(const Json& j, ChannelSet& channels);

void to_json(Json& j, const GainProfile& profile);
void from_json(const Json& j, GainProfile& profile);

void to_json(Json& j, const FixedPriceSolution& sol);
void to_json(Json& j, const Equilibrium& eq);
void to_json(Json& j, const DeviationReport& report);

void to_json(Json& j, const ExperimentConfig& config);
/// Missing keys keep their defaults; unknown keys are a ConfigError.
void from_json(const Json& j, ExperimentConfig& config);

void to_json(Json& j, const FixedPriceRow& row);
void to_json(Json& j, const EquilibriumRow& row);
void to_json(Json& j, const MonteCarloSummary& summary);

// CSV reports: fixed header per mode, six decimals.
void write_csv(std::ostream& out, const std::vector<FixedPriceRow>& rows, std::size_t n_eves);
void write_csv(std::ostream& out, const std::vector<EquilibriumRow>& rows, std::size_t n_eves);
void write_csv(std::ostream& out, const MonteCarloSummary& summary);

/// Equilibrium as a single CSV line in the equilibrium report layout.
void write_csv_row(std::ostream& out, const EquilibriumRow& row);

}  // namespace jamgame

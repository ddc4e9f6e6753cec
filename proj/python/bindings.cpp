#include <pybind11/complex.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "jamgame/channel_model.hpp"
#include "jamgame/equilibrium_solver.hpp"
#include "jamgame/error.hpp"
#include "jamgame/experiment.hpp"
#include "jamgame/fixed_price_solver.hpp"
#include "jamgame/game_core.hpp"
#include "jamgame/serialization.hpp"

namespace py = pybind11;
using namespace jamgame;

namespace {

PriceVector prices_of(const std::vector<double>& mu) { return PriceVector{mu}; }
PowerAllocation powers_of(const std::vector<double>& p) { return PowerAllocation{p}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Stackelberg pricing game between a multicast transmitter and private jammers";

  static py::exception<Error> error(m, "JamgameError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object code = py::str(std::string(to_string(e.code())));
      PyErr_SetObject(error.ptr(), py::make_tuple(py::str(e.what()), code).ptr());
    }
  });

  py::class_<ChannelSet>(m, "ChannelSet")
      .def_readonly("h1", &ChannelSet::h1)
      .def_readonly("g", &ChannelSet::g)
      .def_readonly("gj", &ChannelSet::gj)
      .def_readonly("n_t", &ChannelSet::n_t)
      .def_readonly("n_eves", &ChannelSet::n_eves)
      .def("to_json", [](const ChannelSet& c) { return Json(c).dump(); })
      .def_static("from_json", [](const std::string& s) { return Json::parse(s).get<ChannelSet>(); })
      .def(py::self == py::self);

  py::class_<Beamformer>(m, "Beamformer")
      .def_readonly("w", &Beamformer::w)
      .def_readonly("total_power", &Beamformer::total_power);

  py::class_<GainProfile>(m, "GainProfile")
      .def(py::init([](double beta0, std::vector<double> beta, std::vector<double> alpha,
                       double sigma_e2, double sigma2) {
             GainProfile g{beta0, std::move(beta), std::move(alpha), sigma_e2, sigma2};
             g.validate();
             return g;
           }),
           py::arg("beta0"), py::arg("beta"), py::arg("alpha"), py::arg("sigma_e2") = 0.1,
           py::arg("sigma2") = 0.1)
      .def_readonly("beta0", &GainProfile::beta0)
      .def_readonly("beta", &GainProfile::beta)
      .def_readonly("alpha", &GainProfile::alpha)
      .def_readonly("sigma_e2", &GainProfile::sigma_e2)
      .def_readonly("sigma2", &GainProfile::sigma2)
      .def("__len__", &GainProfile::size);

  py::class_<FixedPriceSolution>(m, "FixedPriceSolution")
      .def_readonly("gamma0", &FixedPriceSolution::gamma0)
      .def_property_readonly("powers", [](const FixedPriceSolution& s) { return s.powers.p; })
      .def_readonly("active_set", &FixedPriceSolution::active_set)
      .def_readonly("revenue", &FixedPriceSolution::revenue)
      .def_readonly("concavity_ok", &FixedPriceSolution::concavity_ok)
      .def_readonly("on_threshold", &FixedPriceSolution::on_threshold)
      .def_readonly("secrecy_clamped", &FixedPriceSolution::secrecy_clamped)
      .def("to_json", [](const FixedPriceSolution& s) { return Json(s).dump(); });

  py::class_<UniformPrice>(m, "UniformPrice")
      .def_readonly("mu0", &UniformPrice::mu0)
      .def_readonly("closed_form_valid", &UniformPrice::closed_form_valid);

  py::class_<Equilibrium>(m, "Equilibrium")
      .def_readonly("mu0", &Equilibrium::mu0)
      .def_property_readonly("powers", [](const Equilibrium& e) { return e.powers.p; })
      .def_readonly("gamma0", &Equilibrium::gamma0)
      .def_readonly("active_set", &Equilibrium::active_set)
      .def_readonly("secrecy_rate", &Equilibrium::secrecy_rate)
      .def_readonly("transmitter_revenue", &Equilibrium::transmitter_revenue)
      .def_readonly("jammer_revenues", &Equilibrium::jammer_revenues)
      .def_readonly("total_jammer_revenue", &Equilibrium::total_jammer_revenue)
      .def_readonly("closed_form_valid", &Equilibrium::closed_form_valid)
      .def("to_json", [](const Equilibrium& e) { return Json(e).dump(); });

  py::class_<DeviationReport>(m, "DeviationReport")
      .def_readonly("max_transmitter_violation", &DeviationReport::max_transmitter_violation)
      .def_readonly("max_jammer_violation", &DeviationReport::max_jammer_violation)
      .def_readonly("deviations_tested", &DeviationReport::deviations_tested)
      .def_readonly("passed", &DeviationReport::passed)
      .def("max_violation", &DeviationReport::max_violation);

  // channel model
  m.def("generate_channels", &generate_channels, py::arg("seed"), py::arg("n_t"),
        py::arg("n_eves"));
  m.def("mrt_beamformer", &mrt_beamformer, py::arg("channels"), py::arg("total_power") = 1.0);
  m.def("gain_profile", &gain_profile, py::arg("channels"), py::arg("beamformer"),
        py::arg("sigma2"), py::arg("sigma_e2"));

  // game primitives
  m.def("eavesdropper_sinr", &eavesdropper_sinr, py::arg("profile"), py::arg("i"), py::arg("p_i"));
  m.def("secrecy_rate", [](const GainProfile& g, const std::vector<double>& p) {
    return secrecy_rate(g, powers_of(p));
  }, py::arg("profile"), py::arg("powers"));
  m.def("interference", &interference, py::arg("profile"), py::arg("i"), py::arg("p_i"));
  m.def("jammer_revenue", &jammer_revenue, py::arg("mu_i"), py::arg("profile"), py::arg("i"),
        py::arg("p_i"));
  m.def("transmitter_revenue",
        [](const GainProfile& g, double lambda1, const std::vector<double>& mu,
           const std::vector<double>& p) {
          return transmitter_revenue(g, GameParams{lambda1, prices_of(mu)}, powers_of(p));
        },
        py::arg("profile"), py::arg("lambda1"), py::arg("prices"), py::arg("powers"));

  // fixed prices
  m.def("solve_fixed_price", [](const GainProfile& g, const std::vector<double>& mu, double lambda1) {
    return solve_fixed_price(g, prices_of(mu), lambda1);
  }, py::arg("profile"), py::arg("prices"), py::arg("lambda1"));
  m.def("oracle_fixed_price",
        [](const GainProfile& g, const std::vector<double>& mu, double lambda1, double tol) {
          return oracle_fixed_price(g, prices_of(mu), lambda1, tol);
        },
        py::arg("profile"), py::arg("prices"), py::arg("lambda1"), py::arg("tol") = 1e-13);
  m.def("gamma_objective",
        [](const GainProfile& g, const std::vector<double>& mu, double lambda1, double gamma0) {
          return gamma_objective(g, prices_of(mu), lambda1, gamma0);
        },
        py::arg("profile"), py::arg("prices"), py::arg("lambda1"), py::arg("gamma0"));

  // equilibrium
  m.def("uniform_price_revenue",
        py::overload_cast<const GainProfile&, double, double>(&uniform_price_revenue),
        py::arg("profile"), py::arg("lambda1"), py::arg("mu0"));
  m.def("optimal_uniform_price", &optimal_uniform_price, py::arg("profile"), py::arg("lambda1"));
  m.def("oracle_uniform_price", &oracle_uniform_price, py::arg("profile"), py::arg("lambda1"),
        py::arg("tol") = 1e-12);
  m.def("stackelberg_equilibrium", &stackelberg_equilibrium, py::arg("profile"),
        py::arg("lambda1"));
  m.def("verify_equilibrium", &verify_equilibrium, py::arg("eq"), py::arg("profile"),
        py::arg("lambda1"), py::arg("deltas") = kDefaultDeviationSteps);
  m.def("oracle_prices_general", [](const GainProfile& g, double lambda1, std::size_t n) {
    return oracle_prices_general(g, lambda1, n).mu;
  }, py::arg("profile"), py::arg("lambda1"), py::arg("grid_points"));

  // experiments; config given as a dict with the JSON config keys
  auto config_of = [](const py::dict& d, Mode mode) {
    ExperimentConfig config;
    Json j = Json::parse(py::str(py::module_::import("json").attr("dumps")(d)).cast<std::string>());
    j.get_to(config);
    config.mode = mode;
    return config;
  };
  m.def("run_fixed_price", [config_of](const py::dict& d) {
    return Json(run_fixed_price(config_of(d, Mode::kFixedPrice))).dump();
  }, py::arg("config") = py::dict());
  m.def("run_equilibrium", [config_of](const py::dict& d) {
    return Json(run_equilibrium(config_of(d, Mode::kEquilibrium))).dump();
  }, py::arg("config") = py::dict());
  m.def("run_monte_carlo", [config_of](const py::dict& d) {
    return Json(run_monte_carlo(config_of(d, Mode::kMonteCarlo))).dump();
  }, py::arg("config") = py::dict());
}

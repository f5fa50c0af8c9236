#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wncs/channel.hpp"
#include "wncs/config.hpp"
#include "wncs/errors.hpp"
#include "wncs/control.hpp"
#include "wncs/link_adaptation.hpp"
#include "wncs/numerics.hpp"
#include "wncs/scheduler.hpp"
#include "wncs/simulator.hpp"
#include "wncs/stability.hpp"

namespace py = pybind11;
using namespace wncs;

namespace {

PbbForm form_of(const std::string& s) {
  if (s == "corrected") return PbbForm::corrected;
  if (s == "as_printed") return PbbForm::as_printed;
  throw py::value_error("pbb form must be 'corrected' or 'as_printed'");
}

}  // namespace

PYBIND11_MODULE(pywncs, m) {
  m.doc() =
      "Edge-cloud AGV downlink simulator: numerics, channel, stability, "
      "link adaptation, and single-run drivers.";

  py::register_exception<DomainError>(m, "DomainError");
  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<NumericError>(m, "NumericError");

  // numerics
  m.def("bessel_j0", &bessel_j0, py::arg("x"),
        "Bessel J0(x), abs error <= 1e-12 on |x| <= 50.");
  m.def("marcum_q1", &marcum_q1, py::arg("a"), py::arg("b"),
        "First-order Marcum Q, clamped to [0, 1].");
  m.def(
      "rayleigh_expect",
      [](const std::function<double(double)>& curve, double gamma_b,
         double rel_tol, double tail_factor) {
        QuadratureSpec spec;
        spec.relative_tolerance = rel_tol;
        spec.tail_truncation_factor = tail_factor;
        return rayleigh_expect(curve, gamma_b, spec);
      },
      py::arg("curve"), py::arg("gamma_b"), py::arg("rel_tol") = 1e-8,
      py::arg("tail_factor") = 40.0,
      "E[curve(gamma)] for gamma ~ Exponential(mean gamma_b).");

  // channel
  py::class_<RadioConfig>(m, "RadioConfig")
      .def(py::init<>())
      .def_readwrite("tx_power_dbm", &RadioConfig::tx_power_dbm)
      .def_readwrite("carrier_wavelength_m", &RadioConfig::carrier_wavelength_m)
      .def_readwrite("reference_distance_m", &RadioConfig::reference_distance_m)
      .def_readwrite("pathloss_exponent", &RadioConfig::pathloss_exponent)
      .def_readwrite("bandwidth_hz", &RadioConfig::bandwidth_hz)
      .def_readwrite("noise_density_dbm_hz", &RadioConfig::noise_density_dbm_hz)
      .def_readwrite("noise_figure_db", &RadioConfig::noise_figure_db)
      .def_readwrite("doppler_hz", &RadioConfig::doppler_hz)
      .def_readwrite("sample_time_s", &RadioConfig::sample_time_s)
      .def("noise_dbm", &RadioConfig::noise_dbm);
  m.def(
      "mean_snr",
      [](const RadioConfig& cfg, double distance_m) {
        return mean_snr(cfg, distance_m);
      },
      py::arg("radio"), py::arg("distance_m"),
      "Mean linear SNR from the log-distance path-loss budget.");
  m.def("fading_correlation", &fading_correlation, py::arg("doppler_hz"),
        py::arg("sample_time_s"), "Lag-one gain correlation J0(2 pi fd Ts).");

  // stability
  m.def(
      "p_back_to_back",
      [](double pe, double rho, const std::string& form) {
        return p_back_to_back(pe, rho, form_of(form));
      },
      py::arg("expected_pe"), py::arg("rho"), py::arg("form") = "corrected",
      "P(error | previous slot erred) on the correlated Rayleigh channel.");
  m.def(
      "p_instability",
      [](double pe, double rho, int n_max, int delta,
         const std::string& form) {
        return p_instability(pe, rho, n_max, delta, form_of(form));
      },
      py::arg("expected_pe"), py::arg("rho"), py::arg("n_max"),
      py::arg("delta"), py::arg("form") = "corrected",
      "Probability the loss streak reaches n_max from the given delta.");
  m.def(
      "solve_pe_threshold",
      [](double rho, int n_max, int delta, double bound,
         const std::string& form) {
        return solve_pe_threshold(rho, n_max, delta, bound, form_of(form));
      },
      py::arg("rho"), py::arg("n_max"), py::arg("delta"), py::arg("bound"),
      py::arg("form") = "corrected",
      "Largest per-slot error probability keeping instability within bound.");

  // link adaptation
  py::class_<McsEntry>(m, "McsEntry")
      .def_readonly("id", &McsEntry::id)
      .def_readonly("modulation_order", &McsEntry::modulation_order)
      .def_readonly("code_rate", &McsEntry::code_rate)
      .def_readonly("snr_db", &McsEntry::snr_db)
      .def_readonly("log10_bler", &McsEntry::log10_bler)
      .def("spectral_efficiency", &McsEntry::spectral_efficiency);
  m.def("default_catalogue", &default_catalogue,
        "Built-in 9-entry MCS table (QPSK/16QAM/64QAM x 1/3, 1/2, 3/4).");
  m.def("load_bler_table", &load_bler_table, py::arg("path"),
        "Load and validate an MCS BLER table from CSV.");
  m.def("rb_needed", &rb_needed, py::arg("payload_bits"), py::arg("mcs"),
        "Resource blocks needed for a payload at the given MCS.");
  m.def("bler_at", &bler_at, py::arg("mcs"), py::arg("snr_linear"),
        "Interpolated BLER at a linear SNR (clamped at curve endpoints).");
  m.def(
      "expected_bler",
      [](const McsEntry& mcs, double gamma_b) {
        return expected_bler(mcs, gamma_b, QuadratureSpec{});
      },
      py::arg("mcs"), py::arg("gamma_b"),
      "BLER averaged over Rayleigh fading with mean SNR gamma_b.");
  m.def("select_mcs_index", &select_mcs_index, py::arg("catalogue"),
        py::arg("snr_linear"), py::arg("pe_threshold"),
        "Most efficient entry with BLER strictly below the threshold, or "
        "-1.");

  // control
  py::class_<Pose>(m, "Pose")
      .def(py::init<>())
      .def_readwrite("x", &Pose::x)
      .def_readwrite("y", &Pose::y)
      .def_readwrite("heading", &Pose::heading);
  m.def("control_error", &control_error, py::arg("a"), py::arg("b"),
        "Planar distance between two poses (heading ignored).");

  // simulator
  py::class_<SimConfig>(m, "SimConfig")
      .def(py::init<>())
      .def_readwrite("arrival_rate", &SimConfig::arrival_rate)
      .def_readwrite("service_rate", &SimConfig::service_rate)
      .def_readwrite("n_max", &SimConfig::n_max)
      .def_readwrite("error_threshold_m", &SimConfig::error_threshold_m)
      .def_readwrite("total_rb", &SimConfig::total_rb)
      .def_readwrite("payload_bits", &SimConfig::payload_bits)
      .def_readwrite("sample_time_s", &SimConfig::sample_time_s)
      .def_readwrite("total_ticks", &SimConfig::total_ticks)
      .def_readwrite("seed", &SimConfig::seed)
      .def_readwrite("cell_radius_m", &SimConfig::cell_radius_m)
      .def_readwrite("instability_bound", &SimConfig::instability_bound)
      .def_readwrite("radio", &SimConfig::radio)
      .def_readwrite("ideal_channel", &SimConfig::ideal_channel)
      .def_property(
          "policy",
          [](const SimConfig& c) { return std::string(policy_name(c.policy)); },
          [](SimConfig& c, const std::string& s) { c.policy = parse_policy(s); })
      .def_property(
          "pbb_form",
          [](const SimConfig& c) {
            return std::string(c.pbb_form == PbbForm::corrected ? "corrected"
                                                                : "as_printed");
          },
          [](SimConfig& c, const std::string& s) { c.pbb_form = form_of(s); });
  m.def("parse_config_text", &parse_config_text, py::arg("text"),
        py::arg("origin") = std::string("<string>"),
        "Parse a flat key = value run config.");
  m.def("render_config", &render_config, py::arg("config"),
        "Render a config as the alphabetized key = value manifest text.");
  m.def(
      "run_single",
      [](const SimConfig& cfg) {
        RunSummary s = run(cfg);
        py::dict d;
        d["mean_ru_pct"] = s.mean_ru_pct();
        d["arrived"] = s.arrived;
        d["successful"] = s.successful;
        d["unstable"] = s.unstable;
        d["unstable_pct"] = s.unstable_pct();
        d["active_at_end"] = s.active_at_end;
        d["fallback_count"] = s.fallback_count;
        d["scheduled_assignments"] = s.scheduled_assignments;
        d["expected_side_violations"] = s.expected_side_violations;
        return d;
      },
      py::arg("config"),
      "Run one simulation; returns the summary counters as a dict.");
}

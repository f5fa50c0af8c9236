#include "wncs/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "wncs/errors.hpp"

namespace wncs {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

struct Parser {
  std::string origin;
  std::string errors;

  void fail(const std::string& key, const std::string& why) {
    if (!errors.empty()) errors += "; ";
    errors += key + ": " + why;
  }

  double num(const std::string& key, const std::string& v, bool& ok) {
    try {
      std::size_t pos = 0;
      const double d = std::stod(v, &pos);
      if (pos != v.size() || !std::isfinite(d)) throw std::exception();
      ok = true;
      return d;
    } catch (...) {
      fail(key, "not a finite number: '" + v + "'");
      ok = false;
      return 0.0;
    }
  }
};

}  // namespace

SimConfig parse_config_text(const std::string& text,
                            const std::string& origin) {
  SimConfig cfg;
  Parser p{origin, ""};

  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      p.fail(origin + ":" + std::to_string(lineno),
             "expected 'key = value', got '" + line + "'");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    bool ok = false;

    auto setd = [&](double& field, auto pred, const char* why) {
      const double d = p.num(key, val, ok);
      if (!ok) return;
      if (!pred(d)) {
        p.fail(key, why);
        return;
      }
      field = d;
    };
    auto seti = [&](int& field, auto pred, const char* why) {
      const double d = p.num(key, val, ok);
      if (!ok) return;
      if (d != std::floor(d) || !pred(static_cast<int>(d))) {
        p.fail(key, why);
        return;
      }
      field = static_cast<int>(d);
    };
    auto pos = [](double d) { return d > 0.0; };

    if (key == "arrival_rate")
      setd(cfg.arrival_rate, [](double d) { return d > 0.0 && d < 0.1; },
           "must be in (0, 0.1)");
    else if (key == "service_rate")
      setd(cfg.service_rate, pos, "must be > 0");
    else if (key == "n_max")
      seti(cfg.n_max, [](int v) { return v >= 1; }, "must be integer >= 1");
    else if (key == "error_threshold_m")
      setd(cfg.error_threshold_m, pos, "must be > 0");
    else if (key == "total_rb")
      seti(cfg.total_rb, [](int v) { return v >= 0; },
           "must be integer >= 0");
    else if (key == "payload_bits")
      seti(cfg.payload_bits, [](int v) { return v >= 1; },
           "must be integer >= 1");
    else if (key == "sample_time_s") {
      setd(cfg.sample_time_s, pos, "must be > 0");
      cfg.radio.sample_time_s = cfg.sample_time_s;
    } else if (key == "total_ticks") {
      const double d = p.num(key, val, ok);
      if (ok && (d < 1 || d != std::floor(d)))
        p.fail(key, "must be integer >= 1");
      else if (ok)
        cfg.total_ticks = static_cast<std::int64_t>(d);
    } else if (key == "seed") {
      const double d = p.num(key, val, ok);
      if (ok && (d < 0 || d != std::floor(d)))
        p.fail(key, "must be a non-negative integer");
      else if (ok)
        cfg.seed = static_cast<std::uint64_t>(d);
    } else if (key == "cell_radius_m")
      setd(cfg.cell_radius_m, pos, "must be > 0");
    else if (key == "policy") {
      try {
        cfg.policy = parse_policy(val);
      } catch (const ConfigError& e) {
        p.fail(key, e.what());
      }
    } else if (key == "pbb_form") {
      if (val == "corrected")
        cfg.pbb_form = PbbForm::corrected;
      else if (val == "as_printed")
        cfg.pbb_form = PbbForm::as_printed;
      else
        p.fail(key, "must be 'corrected' or 'as_printed'");
    } else if (key == "instability_bound")
      setd(cfg.instability_bound,
           [](double d) { return d > 0.0 && d < 1.0; }, "must be in (0, 1)");
    else if (key == "tx_power_dbm") {
      const double d = p.num(key, val, ok);
      if (ok) cfg.radio.tx_power_dbm = d;
    } else if (key == "carrier_wavelength_m")
      setd(cfg.radio.carrier_wavelength_m, pos, "must be > 0");
    else if (key == "reference_distance_m")
      setd(cfg.radio.reference_distance_m, pos, "must be > 0");
    else if (key == "pathloss_exponent")
      setd(cfg.radio.pathloss_exponent,
           [](double d) { return d >= 2.0 && d <= 6.0; },
           "must be in [2, 6]");
    else if (key == "bandwidth_hz")
      setd(cfg.radio.bandwidth_hz, pos, "must be > 0");
    else if (key == "noise_density_dbm_hz") {
      const double d = p.num(key, val, ok);
      if (ok) cfg.radio.noise_density_dbm_hz = d;
    } else if (key == "noise_figure_db") {
      const double d = p.num(key, val, ok);
      if (ok) cfg.radio.noise_figure_db = d;
    } else if (key == "doppler_hz")
      setd(cfg.radio.doppler_hz, [](double d) { return d >= 0.0; },
           "must be >= 0");
    else if (key == "gain_x")
      setd(cfg.gains.k_x, pos, "must be > 0");
    else if (key == "gain_y")
      setd(cfg.gains.k_y, pos, "must be > 0");
    else if (key == "gain_theta")
      setd(cfg.gains.k_theta, pos, "must be > 0");
    else if (key == "track_shape") {
      if (val == "line")
        cfg.track_shape = TrackShape::line;
      else if (val == "circle")
        cfg.track_shape = TrackShape::circle;
      else
        p.fail(key, "must be 'line' or 'circle'");
    } else if (key == "track_speed_mps")
      setd(cfg.track_speed_mps, pos, "must be > 0");
    else if (key == "track_radius_m")
      setd(cfg.track_radius_m, pos, "must be > 0");
    else if (key == "v_max_mps")
      setd(cfg.v_max_mps, pos, "must be > 0");
    else if (key == "quad_rel_tol")
      setd(cfg.quadrature.relative_tolerance, pos, "must be > 0");
    else if (key == "quad_max_subdiv")
      seti(cfg.quadrature.max_subdivisions, [](int v) { return v >= 1; },
           "must be integer >= 1");
    else if (key == "quad_tail_factor")
      setd(cfg.quadrature.tail_truncation_factor,
           [](double d) { return d >= 20.0; }, "must be >= 20");
    else if (key == "ideal_channel") {
      if (val == "true" || val == "1")
        cfg.ideal_channel = true;
      else if (val == "false" || val == "0")
        cfg.ideal_channel = false;
      else
        p.fail(key, "must be true/false");
    } else {
      p.fail(key, "unknown key");
    }
  }

  if (!p.errors.empty())
    throw ConfigError(origin + ": " + p.errors);
  cfg.radio.sample_time_s = cfg.sample_time_s;
  return cfg;
}

SimConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path);
}

namespace {

std::string fmt_num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::string render_config(const SimConfig& c) {
  std::ostringstream os;
  os << "arrival_rate = " << fmt_num(c.arrival_rate) << "\n"
     << "bandwidth_hz = " << fmt_num(c.radio.bandwidth_hz) << "\n"
     << "carrier_wavelength_m = " << fmt_num(c.radio.carrier_wavelength_m)
     << "\n"
     << "cell_radius_m = " << fmt_num(c.cell_radius_m) << "\n"
     << "doppler_hz = " << fmt_num(c.radio.doppler_hz) << "\n"
     << "error_threshold_m = " << fmt_num(c.error_threshold_m) << "\n"
     << "gain_theta = " << fmt_num(c.gains.k_theta) << "\n"
     << "gain_x = " << fmt_num(c.gains.k_x) << "\n"
     << "gain_y = " << fmt_num(c.gains.k_y) << "\n"
     << "ideal_channel = " << (c.ideal_channel ? "true" : "false") << "\n"
     << "instability_bound = " << fmt_num(c.instability_bound) << "\n"
     << "n_max = " << c.n_max << "\n"
     << "noise_density_dbm_hz = " << fmt_num(c.radio.noise_density_dbm_hz)
     << "\n"
     << "noise_figure_db = " << fmt_num(c.radio.noise_figure_db) << "\n"
     << "pathloss_exponent = " << fmt_num(c.radio.pathloss_exponent) << "\n"
     << "payload_bits = " << c.payload_bits << "\n"
     << "pbb_form = "
     << (c.pbb_form == PbbForm::corrected ? "corrected" : "as_printed")
     << "\n"
     << "policy = " << policy_name(c.policy) << "\n"
     << "quad_max_subdiv = " << c.quadrature.max_subdivisions << "\n"
     << "quad_rel_tol = " << fmt_num(c.quadrature.relative_tolerance) << "\n"
     << "quad_tail_factor = " << fmt_num(c.quadrature.tail_truncation_factor)
     << "\n"
     << "reference_distance_m = " << fmt_num(c.radio.reference_distance_m)
     << "\n"
     << "sample_time_s = " << fmt_num(c.sample_time_s) << "\n"
     << "seed = " << c.seed << "\n"
     << "service_rate = " << fmt_num(c.service_rate) << "\n"
     << "total_rb = " << c.total_rb << "\n"
     << "total_ticks = " << c.total_ticks << "\n"
     << "track_radius_m = " << fmt_num(c.track_radius_m) << "\n"
     << "track_shape = "
     << (c.track_shape == TrackShape::line ? "line" : "circle") << "\n"
     << "track_speed_mps = " << fmt_num(c.track_speed_mps) << "\n"
     << "tx_power_dbm = " << fmt_num(c.radio.tx_power_dbm) << "\n"
     << "v_max_mps = " << fmt_num(c.v_max_mps) << "\n";
  return os.str();
}

}  // namespace wncs

#include "app.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "triplewell/errors.hpp"
#include "triplewell/propagator.hpp"

namespace triplewell::app {

namespace {

using nlohmann::json;

constexpr double kCausticShift = 1e-2;

void reject_unknown(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw ValidationError(where, "must be a JSON object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) {
      throw ValidationError(where.empty() ? key : where + "." + key, "unknown key");
    }
  }
}

double read_number(const json& obj, const std::string& key, const std::string& field, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) throw ValidationError(field, "must be a number");
  return v.get<double>();
}

long long read_integer(const json& obj, const std::string& key, const std::string& field, long long fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw ValidationError(field, "must be an integer");
  return v.get<long long>();
}

Well parse_well(const std::string& name) {
  if (name == "left") return Well::left;
  if (name == "central") return Well::central;
  if (name == "right") return Well::right;
  throw ValidationError("packet.well", "must be one of left, central, right");
}

std::string well_name(Well w) {
  return w == Well::left ? "left" : w == Well::central ? "central" : "right";
}

std::ofstream open_output(const std::filesystem::path& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  return out;
}

void write_json(const std::filesystem::path& dir, const std::string& name, const json& doc) {
  auto out = open_output(dir, name);
  out << doc.dump(2) << '\n';
}

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& dir, const std::string& name) : out_(open_output(dir, name)) {}
  void header(const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i) out_ << (i ? "," : "") << names[i];
    out_ << '\n';
  }
  void row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_number(values[i]);
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

const PacketConfig& require_packet(const RunConfig& config) {
  if (!config.packet) throw ValidationError("packet", "this command needs a packet");
  return *config.packet;
}

double autocorrelation(const PacketState& a, const PacketState& b) {
  const double h = a.grid.spacing();
  complex s = 0.0;
  for (std::size_t i = 0; i < a.amplitudes.size(); ++i) {
    const double w = (i == 0 || i + 1 == a.amplitudes.size()) ? 0.5 * h : h;
    s += w * std::conj(a.amplitudes[i]) * b.amplitudes[i];
  }
  return std::norm(s);
}

double sup_difference(const PacketState& a, const PacketState& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.amplitudes.size(); ++i) {
    worst = std::max(worst, std::abs(a.amplitudes[i] - b.amplitudes[i]));
  }
  return worst;
}

// Time used for evolution; caustic-adjacent requests move forward by 1e-2.
double usable_time(double T, std::ostream& log) {
  if (T == 0.0) return 0.0;
  try {
    TimePoint::at(T);
    return T;
  } catch (const CausticError&) {
    log << "warning: T = " << format_number(T) << " is caustic-adjacent, using T = "
        << format_number(T + kCausticShift) << '\n';
    return T + kCausticShift;
  }
}

PacketState propagate(const Model& model, const PacketState& packet, double T) {
  if (T == 0.0) return packet;
  return evolve_propagator(model, packet, TimePoint::at(T));
}

}  // namespace

PacketSpec PacketConfig::resolve(const Model& model) const {
  if (well) return packet_in_well(model.well_partition(), *well, squeeze);
  return PacketSpec{center, squeeze};
}

RunConfig parse_config(const json& doc) {
  reject_unknown(doc, "", {"model", "grid", "packet", "times", "n_max", "states", "outputs"});
  RunConfig cfg;
  if (doc.contains("model")) {
    const json& m = doc.at("model");
    reject_unknown(m, "model", {"omega", "nu", "mu", "Lambda", "Lambda1"});
    cfg.model.omega = read_number(m, "omega", "omega", cfg.model.omega);
    cfg.model.nu = read_number(m, "nu", "nu", cfg.model.nu);
    cfg.model.mu = read_number(m, "mu", "mu", cfg.model.mu);
    cfg.model.Lambda = read_number(m, "Lambda", "Lambda", cfg.model.Lambda);
    cfg.model.Lambda1 = read_number(m, "Lambda1", "Lambda1", cfg.model.Lambda1);
  }
  cfg.model.validate();
  if (doc.contains("grid")) {
    const json& g = doc.at("grid");
    reject_unknown(g, "grid", {"xi_min", "xi_max", "points"});
    cfg.grid.xi_min = read_number(g, "xi_min", "grid.xi_min", cfg.grid.xi_min);
    cfg.grid.xi_max = read_number(g, "xi_max", "grid.xi_max", cfg.grid.xi_max);
    const long long points = read_integer(g, "points", "grid.points", static_cast<long long>(cfg.grid.points));
    if (points < 3) throw ValidationError("grid.points", "must be at least 3");
    cfg.grid.points = static_cast<std::size_t>(points);
  }
  cfg.grid.validate();
  if (std::max(std::abs(cfg.grid.xi_min), std::abs(cfg.grid.xi_max)) > kMaxXi) {
    throw ValidationError("grid", "must lie inside |xi| <= 24");
  }
  if (doc.contains("packet")) {
    const json& p = doc.at("packet");
    reject_unknown(p, "packet", {"well", "center", "squeeze"});
    PacketConfig pc;
    if (p.contains("well") == p.contains("center")) {
      throw ValidationError("packet", "give exactly one of well or center");
    }
    if (p.contains("well")) {
      if (!p.at("well").is_string()) throw ValidationError("packet.well", "must be a string");
      pc.well = parse_well(p.at("well").get<std::string>());
    } else {
      pc.center = read_number(p, "center", "packet.center", 0.0);
    }
    pc.squeeze = read_number(p, "squeeze", "packet.squeeze", 0.0);
    if (!std::isfinite(pc.center) || !std::isfinite(pc.squeeze)) {
      throw ValidationError("packet", "center and squeeze must be finite");
    }
    cfg.packet = pc;
  }
  if (doc.contains("times")) {
    const json& t = doc.at("times");
    if (!t.is_array()) throw ValidationError("times", "must be an array of numbers");
    for (const json& v : t) {
      if (!v.is_number()) throw ValidationError("times", "must be an array of numbers");
      const double T = v.get<double>();
      if (!std::isfinite(T) || T < 0.0) throw ValidationError("times", "entries must be finite and non-negative");
      cfg.times.push_back(T);
    }
  }
  const long long n_max = read_integer(doc, "n_max", "n_max", cfg.n_max);
  if (n_max < 0 || n_max > kDefaultMaxLevel) throw ValidationError("n_max", "must lie in [0, 64]");
  cfg.n_max = static_cast<int>(n_max);
  const long long states = read_integer(doc, "states", "states", cfg.states);
  if (states < 1 || states > kMaxStateIndex + 1) throw ValidationError("states", "must lie in [1, 67]");
  cfg.states = static_cast<int>(states);
  if (doc.contains("outputs")) {
    if (!doc.at("outputs").is_string()) throw ValidationError("outputs", "must be a path string");
    cfg.outputs = doc.at("outputs").get<std::string>();
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config", "cannot read " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("config", std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc);
}

json to_json(const RunConfig& c) {
  json doc;
  doc["model"] = {{"omega", c.model.omega}, {"nu", c.model.nu}, {"mu", c.model.mu},
                  {"Lambda", c.model.Lambda}, {"Lambda1", c.model.Lambda1}};
  doc["grid"] = {{"xi_min", c.grid.xi_min}, {"xi_max", c.grid.xi_max}, {"points", c.grid.points}};
  if (c.packet) {
    json p{{"squeeze", c.packet->squeeze}};
    if (c.packet->well) {
      p["well"] = well_name(*c.packet->well);
    } else {
      p["center"] = c.packet->center;
    }
    doc["packet"] = p;
  }
  doc["times"] = c.times;
  doc["n_max"] = c.n_max;
  doc["states"] = c.states;
  doc["outputs"] = c.outputs.string();
  return doc;
}

Method parse_method(const std::string& name) {
  if (name == "propagator") return Method::propagator;
  if (name == "spectral") return Method::spectral;
  if (name == "both") return Method::both;
  throw ValidationError("method", "must be propagator, spectral or both");
}

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void cmd_potential(const RunConfig& config, std::ostream& log) {
  const Model model(config.model);
  CsvWriter csv(config.outputs, "potential.csv");
  csv.header({"xi", "U"});
  for (std::size_t i = 0; i < config.grid.points; ++i) {
    const double xi = config.grid.at(i);
    csv.row({xi, model.potential(xi)});
  }
  const WellPartition w = model.well_partition();
  write_json(config.outputs, "extrema.json",
             {{"minima", w.minima}, {"barriers", w.barriers},
              {"minimum_values", {model.potential(w.minima[0]), model.potential(w.minima[1]),
                                  model.potential(w.minima[2])}},
              {"barrier_values", {model.potential(w.barriers[0]), model.potential(w.barriers[1])}}});
  log << "potential: " << config.grid.points << " points, minima at " << format_number(w.minima[0]) << ", "
      << format_number(w.minima[1]) << ", " << format_number(w.minima[2]) << '\n';
}

void cmd_states(const RunConfig& config, std::ostream& log) {
  const Model model(config.model);
  const int k = config.states;
  CsvWriter csv(config.outputs, "states.csv");
  std::vector<std::string> names{"xi"};
  for (int n = 0; n < k; ++n) names.push_back("psi" + std::to_string(n));
  csv.header(names);
  std::vector<double> psi(static_cast<std::size_t>(k));
  std::vector<double> norms(psi.size());
  const double h = config.grid.spacing();
  for (std::size_t i = 0; i < config.grid.points; ++i) {
    const double xi = config.grid.at(i);
    model.wavefunctions(xi, psi);
    std::vector<double> row{xi};
    row.insert(row.end(), psi.begin(), psi.end());
    csv.row(row);
    const double w = (i == 0 || i + 1 == config.grid.points) ? 0.5 * h : h;
    for (std::size_t n = 0; n < psi.size(); ++n) norms[n] += w * psi[n] * psi[n];
  }
  json energies = json::array();
  for (int n = 0; n < k; ++n) energies.push_back(model.eigenvalue(n));
  write_json(config.outputs, "energies.json", energies);
  double worst = 0.0;
  for (double v : norms) worst = std::max(worst, std::abs(v - 1.0));
  log << "states: " << k << " eigenfunctions, worst column norm deviation " << format_number(worst) << '\n';
}

void cmd_expand(const RunConfig& config, std::ostream& log) {
  const Model model(config.model);
  const PacketState packet = initial_packet(require_packet(config).resolve(model), config.grid);
  const ExpansionCoefficients coeffs = expand(model, packet, config.n_max);
  json out = json::array();
  for (int n = 0; n <= config.n_max; ++n) {
    out.push_back({{"index", n}, {"energy", model.eigenvalue(n)}, {"c", coeffs.c[static_cast<std::size_t>(n)]}});
  }
  write_json(config.outputs, "coefficients.json", out);
  std::ostringstream line;
  line << "state number";
  for (int n = 1; n <= 9; ++n) line << '\t' << n;
  line << "\nc_n         ";
  line << std::fixed << std::setprecision(3);
  for (int n = 0; n < 9 && n <= config.n_max; ++n) line << '\t' << coeffs.c[static_cast<std::size_t>(n)];
  log << line.str() << "\nsum of c_n^2 over the first ten states: " << format_number(coeffs.sum_squares(std::min(9, config.n_max)))
      << '\n';
}

void cmd_evolve(const RunConfig& config, Method method, std::ostream& log) {
  const Model model(config.model);
  const WellPartition partition = model.well_partition();
  const PacketState packet = initial_packet(require_packet(config).resolve(model), config.grid);
  if (config.times.empty()) throw ValidationError("times", "evolve needs at least one time");
  const ExpansionCoefficients coeffs = expand(model, packet, config.n_max);
  const PacketState projected = evolve_spectral(model, coeffs, 0.0, config.grid);

  CsvWriter evolution(config.outputs, "evolution.csv");
  evolution.header({"T", "xi", "re", "im", "abs"});
  CsvWriter wells(config.outputs, "wells.csv");
  wells.header({"T", "pl", "pc", "pr", "autocorr"});
  json discrepancies = json::array();
  double worst_projected = 0.0;
  double worst_full = 0.0;
  for (double requested : config.times) {
    const double T = usable_time(requested, log);
    PacketState state;
    if (method == Method::spectral) {
      state = evolve_spectral(model, coeffs, T, config.grid);
    } else {
      state = propagate(model, packet, T);
    }
    if (method == Method::both) {
      const PacketState spectral = evolve_spectral(model, coeffs, T, config.grid);
      const double full = sup_difference(state, spectral);
      const double proj = sup_difference(propagate(model, projected, T), spectral);
      worst_full = std::max(worst_full, full);
      worst_projected = std::max(worst_projected, proj);
      discrepancies.push_back({{"T", T}, {"sup_full_packet", full}, {"sup_projected_packet", proj}});
    }
    for (std::size_t i = 0; i < config.grid.points; ++i) {
      const complex a = state.amplitudes[i];
      evolution.row({T, config.grid.at(i), a.real(), a.imag(), std::abs(a)});
    }
    const WellProbabilities p = well_probabilities(state, partition);
    wells.row({T, p.pl, p.pc, p.pr, autocorrelation(packet, state)});
  }
  if (method == Method::both) {
    write_json(config.outputs, "discrepancy.json",
               {{"n_max", config.n_max},
                {"max_projected_packet", worst_projected},
                {"max_full_packet", worst_full},
                {"samples", discrepancies}});
    log << "both: max |propagator - spectral| = " << format_number(worst_projected)
        << " on the n_max projection, " << format_number(worst_full) << " on the full packet\n";
  }
  log << "evolve: " << config.times.size() << " time samples written\n";
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App cli{"Triple-well model, spectra and wave-packet dynamics"};
  cli.fallthrough();
  cli.require_subcommand(1);
  std::string config_path;
  std::string method_name = "propagator";
  std::string out_dir;
  bool dry_run = false;
  cli.add_option("--config", config_path, "JSON run configuration");
  cli.add_option("--method", method_name, "propagator, spectral or both")
      ->check(CLI::IsMember({"propagator", "spectral", "both"}));
  cli.add_option("--out", out_dir, "output directory (overrides the config)");
  cli.add_flag("--dry-run", dry_run, "print the resolved configuration and exit");
  for (const char* name : {"potential", "states", "expand", "evolve", "verify"}) cli.add_subcommand(name);

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << cli.help();
      return kOk;
    }
    err << "error: " << e.what() << '\n';
    return kConfig;
  }
  const std::string command = cli.get_subcommands().front()->get_name();

  try {
    std::optional<RunConfig> config;
    if (!config_path.empty()) config = load_config(config_path);
    if (!out_dir.empty()) {
      if (!config) config = RunConfig{};
      config->outputs = out_dir;
    }
    const Method method = parse_method(method_name);
    if (dry_run) {
      json resolved = to_json(config.value_or(RunConfig{}));
      resolved["command"] = command;
      resolved["method"] = method_name;
      out << resolved.dump(2) << '\n';
      return kOk;
    }
    if (command == "verify") return cmd_verify(config, out) ? kOk : kVerifyFailed;
    const RunConfig cfg = config.value_or(RunConfig{});
    if (command == "potential") cmd_potential(cfg, out);
    if (command == "states") cmd_states(cfg, out);
    if (command == "expand") cmd_expand(cfg, out);
    if (command == "evolve") cmd_evolve(cfg, method, out);
    return kOk;
  } catch (const ValidationError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const ConvergenceError& e) {
    err << "convergence error: " << e.what() << '\n';
    return kConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kOther;
  }
}

}  // namespace triplewell::app

#include "macrorep/harness/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "macrorep/types.hpp"

namespace macrorep::harness {

namespace {

const std::vector<std::string> kKeys = {"n",       "m",    "t",     "l",       "phi",
                                        "outcomes", "seed", "samples", "out",   "summary",
                                        "cat-m",   "q2",   "pairs", "corrupt-sign"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

long parse_long(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const long v = std::stol(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError("--" + key + ": expected an integer, got '" + text + "'");
  }
}

std::uint64_t parse_seed(const std::string& text) {
  try {
    std::size_t used = 0;
    if (!text.empty() && text[0] == '-') throw std::invalid_argument(text);
    const auto v = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError("--seed: expected a non-negative integer, got '" + text + "'");
  }
}

// "10,20,40" or "2:8" (inclusive range).
std::vector<int> parse_int_list(const std::string& key, const std::string& text) {
  std::vector<int> out;
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    const long a = parse_long(key, trim(text.substr(0, colon)));
    const long b = parse_long(key, trim(text.substr(colon + 1)));
    if (b < a) throw UsageError("--" + key + ": empty range '" + text + "'");
    for (long v = a; v <= b; ++v) out.push_back(static_cast<int>(v));
    return out;
  }
  for (const auto& part : split(text, ',')) out.push_back(static_cast<int>(parse_long(key, part)));
  if (out.empty()) throw UsageError("--" + key + ": empty list");
  return out;
}

TGrid parse_grid(const std::string& text) {
  const auto parts = split(text, ':');
  try {
    if (parts.size() == 1) return TGrid{parse_angle(parts[0]), parse_angle(parts[0]), 1};
    if (parts.size() == 3) {
      TGrid g{parse_angle(parts[0]), parse_angle(parts[1]),
              static_cast<int>(parse_long("t", parts[2]))};
      if (g.points < 1) throw UsageError("--t: need at least one point");
      return g;
    }
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
  }
  throw UsageError("--t: expected start:stop:points or a single time, got '" + text + "'");
}

Command parse_command(const std::string& name) {
  static const std::map<std::string, Command> table = {
      {"sweep-entropy", Command::sweep_entropy},   {"sweep-fidelity", Command::sweep_fidelity},
      {"measure-dist", Command::measure_dist},     {"approx-compare", Command::approx_compare},
      {"protocol", Command::protocol},             {"oracle-check", Command::oracle_check}};
  const auto it = table.find(name);
  if (it == table.end()) throw UsageError("unknown command '" + name + "'");
  return it->second;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key != "command" && std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

void validate(RunConfig& cfg, const std::map<std::string, std::string>& v) {
  const bool has_t = v.count("t") != 0;
  const bool has_l = v.count("l") != 0;
  for (int n : cfg.n_atoms) require(n >= 1, "--n: ensemble size must be >= 1");
  for (int m : cfg.m_sites) require(m >= 2, "--m: chain length must be >= 2");
  if (cfg.l_branches) require(*cfg.l_branches >= 1, "--l: need L >= 1");
  require(cfg.samples >= 1, "--samples: need at least 1");

  auto single = [&](const std::vector<int>& list, const char* key) {
    require(list.size() == 1, std::string("--") + key + ": this command takes one value");
  };

  switch (cfg.command) {
    case Command::sweep_entropy:
    case Command::sweep_fidelity:
      require(!has_l, "--l is not used by sweeps; give the time grid with --t");
      require(cfg.phi_mode != PhiMode::magic_offset, "--phi magic-offset needs --l; sweeps take zero or an angle");
      single(cfg.n_atoms, "n");
      if (!cfg.t_grid) cfg.t_grid = TGrid{0.0, kTwoPi, 401};
      break;
    case Command::measure_dist:
      require(has_l, "measure-dist needs --l");
      require(!has_t, "measure-dist takes --l, not --t");
      single(cfg.n_atoms, "n");
      require(cfg.cat_residue >= 0 && cfg.cat_residue < *cfg.l_branches,
              "--cat-m must lie in [0, L-1]");
      if (!v.count("phi")) cfg.phi_mode = PhiMode::magic_offset;
      break;
    case Command::approx_compare:
      require(has_l, "approx-compare needs --l");
      require(!has_t, "approx-compare takes --l, not --t");
      if (!v.count("n")) cfg.n_atoms = {10, 20, 40, 100};
      if (!v.count("m")) cfg.m_sites = {3};
      single(cfg.m_sites, "m");
      require(cfg.m() >= 3, "approx-compare needs at least one measured site (M >= 3)");
      if (!v.count("phi")) cfg.phi_mode = PhiMode::magic_offset;
      if (cfg.m() == 3) {
        require(cfg.outcome_mode != OutcomeMode::literal, "approx-compare with M = 3 takes --q2, not literal --outcomes");
      } else {
        require(cfg.q2_values.empty(), "--q2 applies to M = 3 only");
      }
      break;
    case Command::protocol:
      require(has_l, "protocol needs --l");
      require(!has_t, "protocol takes --l (t = 2pi/L), not --t");
      single(cfg.n_atoms, "n");
      single(cfg.m_sites, "m");
      if (!v.count("phi")) cfg.phi_mode = PhiMode::magic_offset;
      if (!v.count("outcomes")) cfg.outcome_mode = OutcomeMode::sample;
      if (!v.count("samples")) cfg.samples = 100;
      break;
    case Command::oracle_check:
      require(!has_l, "oracle-check takes --t or --pairs, not --l");
      require(!(has_t && cfg.random_pairs > 0), "oracle-check takes either --t or --pairs");
      require(cfg.phi_mode != PhiMode::magic_offset, "oracle-check takes --phi zero or an angle");
      if (!has_t && cfg.random_pairs == 0) cfg.random_pairs = 5;
      for (int n : cfg.n_atoms) {
        for (int m : cfg.m_sites) {
          const double entries = std::pow(n + 1.0, m);
          require(entries <= 2.0e6, "oracle-check: (N+1)^M = " + std::to_string(static_cast<long long>(entries)) +
                                        " exceeds the brute-force budget of 2000000 for N=" +
                                        std::to_string(n) + " M=" + std::to_string(m));
        }
      }
      break;
  }

  if (cfg.outcome_mode == OutcomeMode::literal) {
    single(cfg.m_sites, "m");
    const std::size_t want = static_cast<std::size_t>(cfg.m() - 2);
    require(cfg.literal_outcomes.size() == want,
            "--outcomes: expected " + std::to_string(want) + " values (M-2) for M=" +
                std::to_string(cfg.m()) + ", got " + std::to_string(cfg.literal_outcomes.size()));
    for (int q : cfg.literal_outcomes) {
      for (int n : cfg.n_atoms) require(q >= 0 && q <= n, "--outcomes: value outside [0, N]");
    }
  }
}

}  // namespace

std::vector<double> TGrid::values() const {
  std::vector<double> out(points);
  for (int i = 0; i < points; ++i) {
    out[i] = points == 1 ? start : start + (stop - start) * i / (points - 1);
  }
  return out;
}

double RunConfig::magic_time() const {
  if (!l_branches) throw UsageError("magic time needs --l");
  return kTwoPi / *l_branches;
}

double RunConfig::phi() const {
  switch (phi_mode) {
    case PhiMode::zero: return 0.0;
    case PhiMode::value: return phi_value;
    case PhiMode::magic_offset:
      if (!l_branches) throw UsageError("--phi magic-offset needs --l");
      return kPi / (2.0 * *l_branches);
  }
  return 0.0;
}

const char* command_name(Command c) {
  switch (c) {
    case Command::sweep_entropy: return "sweep-entropy";
    case Command::sweep_fidelity: return "sweep-fidelity";
    case Command::measure_dist: return "measure-dist";
    case Command::approx_compare: return "approx-compare";
    case Command::protocol: return "protocol";
    case Command::oracle_check: return "oracle-check";
  }
  return "?";
}

double parse_angle(const std::string& raw) {
  const std::string text = trim(raw);
  const auto pi = text.find("pi");
  if (pi == std::string::npos) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(text, &used);
    } catch (const std::exception&) {
      throw UsageError("cannot parse angle '" + raw + "'");
    }
    if (used != text.size()) throw UsageError("cannot parse angle '" + raw + "'");
    return v;
  }
  std::string coef = text.substr(0, pi);
  std::string rest = text.substr(pi + 2);
  double factor = 1.0;
  if (coef == "-") {
    factor = -1.0;
  } else if (!coef.empty() && coef != "+") {
    factor = parse_angle(coef);
  }
  double divisor = 1.0;
  if (!rest.empty()) {
    if (rest[0] != '/') throw UsageError("cannot parse angle '" + raw + "'");
    divisor = parse_angle(rest.substr(1));
    if (divisor == 0.0) throw UsageError("angle divides by zero: '" + raw + "'");
  }
  return factor * kPi / divisor;
}

RunConfig parse_config(int argc, const char* const* argv) {
  CLI::App app{"Ensemble-chain entanglement simulator", "macrorep"};
  std::string command;
  std::string config_path;
  std::map<std::string, std::string> flags;
  std::map<std::string, CLI::Option*> opts;
  bool corrupt = false;
  app.add_option("command", command,
                 "sweep-entropy | sweep-fidelity | measure-dist | approx-compare | protocol | oracle-check");
  app.add_option("--config", config_path, "key = value file; flags override it");
  opts["n"] = app.add_option("--n", flags["n"], "ensemble size N (list allowed for approx-compare)");
  opts["m"] = app.add_option("--m", flags["m"], "chain length M: value, list a,b or range a:b");
  opts["t"] = app.add_option("--t", flags["t"], "time grid start:stop:points or single time");
  opts["l"] = app.add_option("--l", flags["l"], "number of cat branches L (t = 2pi/L)");
  opts["phi"] = app.add_option("--phi", flags["phi"], "zero | magic-offset | angle (e.g. pi/8)");
  opts["outcomes"] = app.add_option("--outcomes", flags["outcomes"], "all-N | sample | literal a,b,...");
  opts["seed"] = app.add_option("--seed", flags["seed"], "base RNG seed");
  opts["samples"] = app.add_option("--samples", flags["samples"], "protocol runs");
  opts["out"] = app.add_option("--out", flags["out"], "CSV path, - for stdout");
  opts["summary"] = app.add_option("--summary", flags["summary"], "approx-compare summary CSV path");
  opts["cat-m"] = app.add_option("--cat-m", flags["cat-m"], "cat residue measured by measure-dist");
  opts["q2"] = app.add_option("--q2", flags["q2"], "approx-compare outcomes for M = 3");
  opts["pairs"] = app.add_option("--pairs", flags["pairs"], "oracle-check random (t, phi) pairs");
  opts["corrupt-sign"] = app.add_flag("--corrupt-sign", corrupt, "flip the engine's coupling sign (negative control)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  std::map<std::string, std::string> values;
  if (!config_path.empty()) values = read_config_file(config_path);
  for (const auto& [key, opt] : opts) {
    if (opt->count() == 0) continue;
    values[key] = key == "corrupt-sign" ? "true" : flags[key];
  }
  if (command.empty()) {
    const auto it = values.find("command");
    if (it == values.end()) throw UsageError("missing command\n" + app.help());
    command = it->second;
  }
  values.erase("command");

  RunConfig cfg;
  cfg.command = parse_command(command);
  cfg.n_atoms = values.count("n") ? parse_int_list("n", values["n"]) : std::vector<int>{20};
  cfg.m_sites = values.count("m") ? parse_int_list("m", values["m"]) : std::vector<int>{2};
  if (values.count("t")) cfg.t_grid = parse_grid(values["t"]);
  if (values.count("l")) cfg.l_branches = static_cast<int>(parse_long("l", values["l"]));
  if (values.count("phi")) {
    const std::string& p = values["phi"];
    if (p == "zero") {
      cfg.phi_mode = PhiMode::zero;
    } else if (p == "magic-offset") {
      cfg.phi_mode = PhiMode::magic_offset;
    } else {
      cfg.phi_mode = PhiMode::value;
      cfg.phi_value = parse_angle(p);
    }
  }
  if (values.count("outcomes")) {
    const std::string& o = values["outcomes"];
    if (o == "all-N") {
      cfg.outcome_mode = OutcomeMode::all_max;
    } else if (o == "sample") {
      cfg.outcome_mode = OutcomeMode::sample;
    } else {
      cfg.outcome_mode = OutcomeMode::literal;
      if (!trim(o).empty()) {
        for (const auto& part : split(o, ',')) {
          cfg.literal_outcomes.push_back(static_cast<int>(parse_long("outcomes", part)));
        }
      }
    }
  }
  if (values.count("seed")) cfg.seed = parse_seed(values["seed"]);
  if (values.count("samples")) cfg.samples = static_cast<int>(parse_long("samples", values["samples"]));
  if (values.count("out")) cfg.out_path = values["out"];
  if (values.count("summary")) cfg.summary_path = values["summary"];
  if (values.count("cat-m")) cfg.cat_residue = static_cast<int>(parse_long("cat-m", values["cat-m"]));
  if (values.count("q2")) cfg.q2_values = parse_int_list("q2", values["q2"]);
  if (values.count("pairs")) {
    cfg.random_pairs = static_cast<int>(parse_long("pairs", values["pairs"]));
    require(cfg.random_pairs >= 1, "--pairs: need at least 1");
  }
  if (values.count("corrupt-sign")) {
    const std::string& c = values["corrupt-sign"];
    require(c == "true" || c == "false" || c == "1" || c == "0", "corrupt-sign: expected true or false");
    cfg.corrupt_sign = (c == "true" || c == "1");
  }
  validate(cfg, values);
  return cfg;
}

}  // namespace macrorep::harness

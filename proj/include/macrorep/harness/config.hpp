#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace macrorep::harness {

enum class Command {
  sweep_entropy,
  sweep_fidelity,
  measure_dist,
  approx_compare,
  protocol,
  oracle_check
};

enum class PhiMode { zero, magic_offset, value };
enum class OutcomeMode { all_max, sample, literal };

struct TGrid {
  double start = 0.0;
  double stop = 0.0;
  int points = 1;

  /// Evenly spaced, both ends included; a single point sits at start.
  std::vector<double> values() const;
};

struct RunConfig {
  Command command = Command::sweep_entropy;
  std::vector<int> n_atoms;
  std::vector<int> m_sites;
  std::optional<TGrid> t_grid;
  std::optional<int> l_branches;
  PhiMode phi_mode = PhiMode::zero;
  double phi_value = 0.0;
  OutcomeMode outcome_mode = OutcomeMode::all_max;
  std::vector<int> literal_outcomes;
  std::uint64_t seed = 0;
  int samples = 1;
  std::string out_path = "-";
  std::string summary_path;  // approx-compare only; empty means derived
  int cat_residue = 0;       // measure-dist
  std::vector<int> q2_values;  // approx-compare; empty means {0, N/2, N}
  int random_pairs = 0;        // oracle-check
  bool corrupt_sign = false;   // oracle-check negative control

  int n() const { return n_atoms.front(); }
  int m() const { return m_sites.front(); }
  /// 2 pi / L; requires l_branches.
  double magic_time() const;
  /// Offset angle for the given mode; magic-offset requires l_branches.
  double phi() const;
};

/// Bad command line or config file; the CLI maps it to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// --help was requested; what() carries the help text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const char* command_name(Command c);

/// Parse argv (argv[0] is the program name). A `--config FILE` flag loads
/// key = value lines first; flags given on the command line win.
RunConfig parse_config(int argc, const char* const* argv);

/// Angle such as "1.5", "pi", "2pi/3" or "-pi/8".
double parse_angle(const std::string& text);

}  // namespace macrorep::harness

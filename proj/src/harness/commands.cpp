#include "macrorep/harness/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <sstream>

#include "macrorep/analysis.hpp"
#include "macrorep/chain.hpp"
#include "macrorep/harness/workers.hpp"
#include "macrorep/oracle.hpp"
#include "macrorep/protocol.hpp"
#include "macrorep/rng.hpp"
#include "macrorep/spincat.hpp"

namespace macrorep::harness {

namespace {

constexpr double kOracleTolerance = 1e-10;

struct SweepPoint {
  int m;
  double t;
};

struct ChosenOutcomes {
  OutcomeVector outcomes;
  std::string spec;
};

ChosenOutcomes choose_outcomes(const RunConfig& cfg, const ChainEngine& engine,
                               const ChainSpec& spec, std::uint64_t seed) {
  switch (cfg.outcome_mode) {
    case OutcomeMode::all_max:
      return {OutcomeVector::all_max(spec), "all-N"};
    case OutcomeMode::literal:
      return {OutcomeVector(cfg.literal_outcomes), join_ints(cfg.literal_outcomes)};
    case OutcomeMode::sample: {
      auto s = engine.sample(spec, seed);
      return {s.outcomes, "sample:" + join_ints(s.outcomes.values())};
    }
  }
  return {};
}

template <class Metric>
void run_sweep(const RunConfig& cfg, std::ostream& out, const char* column, Metric metric) {
  const EnsembleDim dim(cfg.n());
  const ChainEngine engine(dim);
  const double phi = cfg.phi();
  std::vector<SweepPoint> points;
  for (int m : cfg.m_sites) {
    for (double t : cfg.t_grid->values()) points.push_back({m, t});
  }
  const auto rows = parallel_map(points.size(), [&](std::size_t i) {
    const ChainSpec spec(points[i].m, dim, points[i].t, phi);
    const auto chosen = choose_outcomes(cfg, engine, spec, cfg.seed + i);
    const BipartiteState state = engine.project(spec, chosen.outcomes);
    const double value = metric(state, spec);
    return std::to_string(spec.m_sites) + "," + std::to_string(dim.n_atoms()) + "," +
           format_real(spec.time) + "," + format_real(phi) + "," + chosen.spec + "," +
           format_real(value) + "," + format_real(state.norm_sq()) + "\n";
  });
  out << "M,N,t,phi,outcome_spec," << column << ",p_q\n";
  for (const auto& r : rows) out << r;
}

struct CompareItem {
  int n;
  int q2;
  OutcomeVector outcomes;
  std::string label;
};

struct CompareResult {
  std::string rows;
  std::string summary;
};

struct OracleItem {
  int n;
  int m;
  double t;
  double phi;
};

struct OracleResult {
  std::size_t checked = 0;
  double max_deviation = 0.0;
  double prob_sum = 0.0;
  std::vector<int> worst_outcome;
  int worst_k1 = 0;
  int worst_km = 0;
};

std::ostream& open_or(const std::string& path, std::ostream& fallback,
                      std::unique_ptr<std::ofstream>& holder) {
  if (path.empty() || path == "-") return fallback;
  holder = std::make_unique<std::ofstream>(path, std::ios::binary);
  if (!*holder) throw UsageError("cannot open '" + path + "' for writing");
  return *holder;
}

}  // namespace

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ';';
    s += std::to_string(v[i]);
  }
  return s;
}

void run_sweep_entropy(const RunConfig& cfg, std::ostream& out) {
  run_sweep(cfg, out, "entropy",
            [](const BipartiteState& s, const ChainSpec&) { return entanglement_entropy(s); });
}

void run_sweep_fidelity(const RunConfig& cfg, std::ostream& out) {
  run_sweep(cfg, out, "fidelity", [](const BipartiteState& s, const ChainSpec& spec) {
    return fidelity(s, parity_target(spec.dim, spec.time, spec.m_sites));
  });
}

void run_measure_dist(const RunConfig& cfg, std::ostream& out) {
  const EnsembleDim dim(cfg.n());
  const int l = *cfg.l_branches;
  const double phi = cfg.phi();
  const auto p = rotated_cat_distribution(dim, CatLabel::make(dim, l, cfg.cat_residue), phi);
  out << "q,prob,label,q_peak\n";
  for (int q = 0; q <= dim.n_atoms(); ++q) {
    const int label = classify_outcome(dim, l, phi, q, SiteParity::odd);
    out << q << "," << format_real(p[q]) << "," << label << ","
        << format_real(q_peak(dim, l, phi, label, SiteParity::odd)) << "\n";
  }
}

void run_approx_compare(const RunConfig& cfg, std::ostream& out, std::ostream& summary) {
  const int m = cfg.m();
  const int l = *cfg.l_branches;
  std::vector<CompareItem> items;
  for (int n : cfg.n_atoms) {
    if (m == 3) {
      std::vector<int> q2s = cfg.q2_values;
      if (q2s.empty()) q2s = {0, n / 2, n};
      for (int q : q2s) {
        if (q < 0 || q > n) throw UsageError("--q2 value " + std::to_string(q) + " outside [0, N]");
        items.push_back({n, q, OutcomeVector({q}), std::to_string(q)});
      }
    } else {
      items.push_back({n, -1, {}, ""});
    }
  }
  std::map<int, std::shared_ptr<const ChainEngine>> engines;
  for (const auto& it : items) {
    if (!engines.count(it.n)) engines[it.n] = std::make_shared<const ChainEngine>(EnsembleDim(it.n));
  }
  const double phi = cfg.phi();
  const auto results = parallel_map(items.size(), [&](std::size_t i) {
    const CompareItem& item = items[i];
    const EnsembleDim dim(item.n);
    const ChainEngine& engine = *engines.at(item.n);
    const MagicSpec magic(l, dim);
    const ChainSpec spec(m, dim, magic.time(), phi);
    OutcomeVector outcomes = item.outcomes;
    std::string label = item.label;
    if (m != 3) {
      const auto chosen = choose_outcomes(cfg, engine, spec, cfg.seed + i);
      outcomes = chosen.outcomes;
      label = chosen.spec;
    }
    const BipartiteState exact = engine.project(spec, outcomes).normalized();
    const CollapseRecord record = CollapseRecord::classify(magic, m, outcomes, phi);
    const BipartiteState approx = approx_projected_state(magic, m, record);
    const std::string prefix =
        std::to_string(item.n) + "," + std::to_string(m) + "," + std::to_string(l) + "," + label + ",";
    CompareResult r;
    const int d = dim.basis_size();
    for (int k1 = 0; k1 < d; ++k1) {
      for (int km = 0; km < d; ++km) {
        r.rows += prefix + std::to_string(d * k1 + km + 1) + "," +
                  format_real(std::abs(exact.amps()(k1, km))) + "," +
                  format_real(std::abs(approx.amps()(k1, km))) + "\n";
      }
    }
    r.summary = prefix + format_real(fidelity(exact, approx)) + "\n";
    return r;
  });
  out << "N,M,L,q2,K,amp_exact,amp_approx\n";
  for (const auto& r : results) out << r.rows;
  summary << "N,M,L,q2,fidelity\n";
  for (const auto& r : results) summary << r.summary;
}

void run_protocol(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const EnsembleDim dim(cfg.n());
  const MagicSpec magic(*cfg.l_branches, dim);
  const ChainEngine engine(dim);
  const int m = cfg.m();
  ProtocolOptions base;
  base.offset = cfg.phi();
  if (cfg.outcome_mode == OutcomeMode::all_max) {
    base.forced_outcomes = OutcomeVector::all_max(ChainSpec(m, dim, magic.time(), *base.offset));
  } else if (cfg.outcome_mode == OutcomeMode::literal) {
    base.forced_outcomes = OutcomeVector(cfg.literal_outcomes);
  }
  const auto reports = parallel_map(static_cast<std::size_t>(cfg.samples), [&](std::size_t i) {
    return macrorep::run_protocol(engine, magic, m, cfg.seed + i, base);
  });
  out << "seed,outcomes,labels,p_q,fid_pre,fid_post\n";
  double sum = 0.0;
  double min = std::numeric_limits<double>::infinity();
  int improved = 0;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    out << cfg.seed + i << "," << join_ints(r.outcomes.values()) << ","
        << join_ints(r.record.site_labels()) << "," << format_real(r.probability) << ","
        << format_real(r.fidelity_pre) << "," << format_real(r.fidelity_post) << "\n";
    sum += r.fidelity_post;
    min = std::min(min, r.fidelity_post);
    if (r.fidelity_post >= r.fidelity_pre) ++improved;
  }
  log << "protocol: samples=" << reports.size()
      << " mean_fid_post=" << format_real(sum / reports.size())
      << " min_fid_post=" << format_real(min)
      << " post_ge_pre=" << improved << "/" << reports.size() << "\n";
}

int run_oracle_check(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  std::vector<std::pair<double, double>> pairs;
  if (cfg.random_pairs > 0) {
    SeededRng rng(cfg.seed);
    for (int i = 0; i < cfg.random_pairs; ++i) {
      const double t = kTwoPi * rng.uniform();
      pairs.emplace_back(t, kTwoPi * rng.uniform());
    }
  } else {
    for (double t : cfg.t_grid->values()) pairs.emplace_back(t, cfg.phi());
  }
  std::vector<OracleItem> items;
  for (int n : cfg.n_atoms)
    for (int m : cfg.m_sites)
      for (const auto& [t, phi] : pairs) items.push_back({n, m, t, phi});

  const auto results = parallel_map(items.size(), [&](std::size_t i) {
    const OracleItem& item = items[i];
    ChainSpec spec(item.m, EnsembleDim(item.n), item.t, item.phi);
    if (cfg.corrupt_sign) spec.convention = CouplingConvention::flipped;
    const ChainEngine engine(spec.dim);
    const FullChainState full = oracle_full_state(spec);
    OracleResult r;
    for (const auto& outcomes : enumerate_outcomes(spec)) {
      const BipartiteState fast = engine.project(spec, outcomes);
      const BipartiteState slow = oracle_project(full, spec, outcomes);
      r.prob_sum += fast.norm_sq();
      ++r.checked;
      for (int a = 0; a < fast.amps().rows(); ++a) {
        for (int b = 0; b < fast.amps().cols(); ++b) {
          const double dev = std::abs(fast.amps()(a, b) - slow.amps()(a, b));
          if (dev > r.max_deviation || r.worst_outcome.empty()) {
            r.max_deviation = std::max(r.max_deviation, dev);
            r.worst_outcome = outcomes.values();
            r.worst_k1 = a;
            r.worst_km = b;
          }
        }
      }
    }
    return r;
  });

  out << "M,N,t,phi,outcomes_checked,prob_sum,max_deviation,worst_outcome,worst_k1,worst_kM\n";
  double overall = 0.0;
  std::size_t worst = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& it = items[i];
    const auto& r = results[i];
    out << it.m << "," << it.n << "," << format_real(it.t) << "," << format_real(it.phi) << ","
        << r.checked << "," << format_real(r.prob_sum) << "," << format_real(r.max_deviation) << ","
        << join_ints(r.worst_outcome) << "," << r.worst_k1 << "," << r.worst_km << "\n";
    if (r.max_deviation > overall) {
      overall = r.max_deviation;
      worst = i;
    }
  }
  if (overall <= kOracleTolerance) {
    log << "oracle-check: PASS max_deviation=" << format_real(overall) << " over " << items.size()
        << " configurations\n";
    return 0;
  }
  const auto& it = items[worst];
  const auto& r = results[worst];
  log << "oracle-check: FAIL max_deviation=" << format_real(overall) << " at M=" << it.m
      << " N=" << it.n << " t=" << format_real(it.t) << " phi=" << format_real(it.phi)
      << " outcomes=[" << join_ints(r.worst_outcome) << "] k1=" << r.worst_k1
      << " kM=" << r.worst_km << "\n";
  return 1;
}

int execute(const RunConfig& cfg, std::ostream& stdout_stream, std::ostream& stderr_stream) {
  std::unique_ptr<std::ofstream> file;
  std::ostream& out = open_or(cfg.out_path, stdout_stream, file);
  int code = 0;
  switch (cfg.command) {
    case Command::sweep_entropy: run_sweep_entropy(cfg, out); break;
    case Command::sweep_fidelity: run_sweep_fidelity(cfg, out); break;
    case Command::measure_dist: run_measure_dist(cfg, out); break;
    case Command::approx_compare: {
      std::string path = cfg.summary_path;
      if (path.empty() && cfg.out_path != "-") path = cfg.out_path + ".summary.csv";
      std::unique_ptr<std::ofstream> sfile;
      if (path.empty()) {
        std::ostringstream buffered;
        run_approx_compare(cfg, out, buffered);
        out << "\n" << buffered.str();
      } else {
        run_approx_compare(cfg, out, open_or(path, stdout_stream, sfile));
      }
      break;
    }
    case Command::protocol: run_protocol(cfg, out, stderr_stream); break;
    case Command::oracle_check: code = run_oracle_check(cfg, out, stderr_stream); break;
  }
  out.flush();
  if (!out) {
    stderr_stream << "error: failed writing output\n";
    return 1;
  }
  return code;
}

}  // namespace macrorep::harness

#include "macrorep/protocol.hpp"

#include "macrorep/analysis.hpp"

namespace macrorep {

BipartiteState apply_corrections(const BipartiteState& state, const CollapseRecord& record,
                                 int l_branches) {
  if (record.l_branches != l_branches) {
    throw DomainError("apply_corrections: record built for a different L");
  }
  CMatrix amps = state.amps();
  const int d = state.dim().basis_size();
  for (int k1 = 0; k1 < d; ++k1) {
    amps.row(k1) *= std::polar(1.0, -kTwoPi * record.n_odd_total * k1 / l_branches);
  }
  if (record.m_sites % 2 == 0) {
    for (int km = 0; km < d; ++km) {
      amps.col(km) *= std::polar(1.0, kTwoPi * record.m_even_total * km / l_branches);
    }
  }
  return BipartiteState(state.dim(), std::move(amps));
}

BipartiteState protocol_target(EnsembleDim dim, const CollapseRecord& record) {
  if (record.m_sites % 2 == 0) return bell_cat_target(dim, record.l_branches, SiteParity::even);
  return shifted_cat_target(dim, record.l_branches, record.m_even_total);
}

ProtocolReport run_protocol(const ChainEngine& engine, const MagicSpec& spec, int m_sites,
                            std::uint64_t rng_seed, const ProtocolOptions& options) {
  if (!(engine.dim() == spec.dim)) throw DomainError("run_protocol: engine size mismatch");
  // Steps 1-3: product state, coupling for t = 2pi/L, offset rotation.
  const double phi = options.offset.value_or(spec.offset());
  const ChainSpec chain(m_sites, spec.dim, spec.time(), phi);

  // Step 4: measurement.
  OutcomeVector outcomes;
  if (options.forced_outcomes) {
    outcomes = *options.forced_outcomes;
  } else {
    outcomes = engine.sample(chain, rng_seed).outcomes;
  }
  const BipartiteState raw = engine.project(chain, outcomes);
  if (!(raw.norm_sq() > 0.0)) throw DomainError("run_protocol: outcome has zero probability");

  // Step 5: classification and correction.
  CollapseRecord record = CollapseRecord::classify(spec, m_sites, outcomes, phi);
  const BipartiteState target = protocol_target(spec.dim, record);
  const BipartiteState corrected = apply_corrections(raw, record, spec.l_branches);

  return ProtocolReport{std::move(outcomes), std::move(record), raw.norm_sq(),
                        fidelity(raw, target), fidelity(corrected, target)};
}

ProtocolReport run_protocol(const MagicSpec& spec, int m_sites, std::uint64_t rng_seed,
                            const ProtocolOptions& options) {
  return run_protocol(ChainEngine(spec.dim), spec, m_sites, rng_seed, options);
}

}  // namespace macrorep

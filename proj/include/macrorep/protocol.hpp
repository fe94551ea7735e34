#pragma once

// Deterministic repeater protocol at a magic time: entangle the chain,
// rotate and measure the intermediate ensembles, classify the outcomes and
// undo the collapse-dependent phases on the end ensembles.

#include <cstdint>
#include <optional>

#include "macrorep/chain.hpp"
#include "macrorep/spincat.hpp"

namespace macrorep {

/// Even M: row k_1 times e^{-2 pi i n_odd k_1 / L}, column k_M times
/// e^{+2 pi i m_even k_M / L}. Odd M: only the row phase; the relabelling of
/// the last cat is not a phase operation and is absorbed into the target.
BipartiteState apply_corrections(const BipartiteState& state, const CollapseRecord& record,
                                 int l_branches);

/// State the corrected output is compared with: the Bell-cat state for even
/// M, sum_m |C_m>|C_{m - m_even}> / sqrt(L) for odd M.
BipartiteState protocol_target(EnsembleDim dim, const CollapseRecord& record);

struct ProtocolReport {
  OutcomeVector outcomes;
  CollapseRecord record;
  double probability;
  double fidelity_pre;
  double fidelity_post;
};

struct ProtocolOptions {
  /// Replace the magic offset pi/(2L) (e.g. 0 for the q = N variant).
  std::optional<double> offset;
  /// Skip sampling and use these outcomes.
  std::optional<OutcomeVector> forced_outcomes;
};

ProtocolReport run_protocol(const MagicSpec& spec, int m_sites, std::uint64_t rng_seed,
                            const ProtocolOptions& options = {});

/// Same, reusing a prepared engine (its ensemble size must match).
ProtocolReport run_protocol(const ChainEngine& engine, const MagicSpec& spec, int m_sites,
                            std::uint64_t rng_seed, const ProtocolOptions& options = {});

}  // namespace macrorep

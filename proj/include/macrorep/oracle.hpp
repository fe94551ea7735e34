#pragma once

// Brute-force reference: the full (N+1)^M chain state built literally as a
// product of coherent states times the diagonal coupling phases, and
// projected by direct tensor contraction. Validation only.

#include <cstddef>
#include <vector>

#include "macrorep/chain.hpp"

namespace macrorep {

inline constexpr std::size_t kOracleMaxEntries = 2'000'000;

class FullChainState {
 public:
  FullChainState(int m_sites, EnsembleDim dim, CVector amps);

  int m_sites() const { return m_sites_; }
  const EnsembleDim& dim() const { return dim_; }
  /// Site 1 is the most significant digit of the flat index.
  const CVector& amps() const { return amps_; }

 private:
  int m_sites_;
  EnsembleDim dim_;
  CVector amps_;
};

/// Always uses the alternating coupling signs, whatever spec.convention says.
FullChainState oracle_full_state(const ChainSpec& spec);

/// Apply e^{i phi n^a} then <q_j|^(x) on every intermediate site.
BipartiteState oracle_project(const FullChainState& full, const ChainSpec& spec,
                              const OutcomeVector& outcomes);

/// Every outcome vector of the spec's chain in lexicographic order.
std::vector<OutcomeVector> enumerate_outcomes(const ChainSpec& spec);

}  // namespace macrorep

#include "macrorep/oracle.hpp"

#include <cmath>
#include <string>

namespace macrorep {

namespace {

std::size_t checked_size(int m_sites, const EnsembleDim& dim) {
  double entries = std::pow(double(dim.basis_size()), m_sites);
  if (entries > double(kOracleMaxEntries)) {
    throw DomainError("oracle: (N+1)^M = " + std::to_string(entries) +
                      " exceeds the brute-force budget of " +
                      std::to_string(kOracleMaxEntries) + " amplitudes");
  }
  return static_cast<std::size_t>(entries);
}

}  // namespace

FullChainState::FullChainState(int m_sites, EnsembleDim dim, CVector amps)
    : m_sites_(m_sites), dim_(dim), amps_(std::move(amps)) {
  if (static_cast<std::size_t>(amps_.size()) != checked_size(m_sites_, dim_)) {
    throw DomainError("FullChainState: amplitude count does not match (N+1)^M");
  }
}

FullChainState oracle_full_state(const ChainSpec& spec) {
  const std::size_t total = checked_size(spec.m_sites, spec.dim);
  const int d = spec.dim.basis_size();
  const int m = spec.m_sites;
  const FockVector site = coherent_fock(spec.dim, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));

  CVector amps(static_cast<Eigen::Index>(total));
  std::vector<int> k(m, 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    for (int s = m - 1; s >= 0; --s) {
      k[s] = static_cast<int>(rem % d);
      rem /= d;
    }
    Complex amp = 1.0;
    for (int s = 0; s < m; ++s) amp *= site[k[s]];
    // U = prod_j exp(-i (-1)^j n_j n_{j+1} t), sites numbered from 1.
    double phase = 0.0;
    for (int j = 1; j < m; ++j) {
      const double sign = (j % 2 == 0) ? 1.0 : -1.0;
      phase -= sign * double(k[j - 1]) * k[j] * spec.time;
    }
    amps(static_cast<Eigen::Index>(idx)) = amp * std::polar(1.0, phase);
  }
  return FullChainState(m, spec.dim, std::move(amps));
}

BipartiteState oracle_project(const FullChainState& full, const ChainSpec& spec,
                              const OutcomeVector& outcomes) {
  if (full.m_sites() != spec.m_sites || !(full.dim() == spec.dim)) {
    throw DomainError("oracle_project: state does not match spec");
  }
  outcomes.validate(spec);
  const int d = spec.dim.basis_size();
  const int m = spec.m_sites;

  // bra[j][k] = <q_j|^(x) e^{i phi n^a} |k>
  std::vector<std::vector<Complex>> bra(m);
  for (int site = 2; site < m; ++site) {
    bra[site - 1].resize(d);
    for (int k = 0; k < d; ++k) {
      bra[site - 1][k] = xnumber_overlap_fock(spec.dim, outcomes.at_site(site), k) *
                         std::polar(1.0, k * spec.offset);
    }
  }

  CMatrix out = CMatrix::Zero(d, d);
  std::vector<int> k(m, 0);
  const auto& amps = full.amps();
  for (Eigen::Index idx = 0; idx < amps.size(); ++idx) {
    Eigen::Index rem = idx;
    for (int s = m - 1; s >= 0; --s) {
      k[s] = static_cast<int>(rem % d);
      rem /= d;
    }
    Complex v = amps(idx);
    for (int s = 1; s < m - 1; ++s) v *= bra[s][k[s]];
    out(k[0], k[m - 1]) += v;
  }
  return BipartiteState(spec.dim, std::move(out));
}

std::vector<OutcomeVector> enumerate_outcomes(const ChainSpec& spec) {
  const int len = spec.intermediate_count();
  const int d = spec.dim.basis_size();
  std::vector<OutcomeVector> all;
  std::vector<int> q(len, 0);
  while (true) {
    all.emplace_back(q);
    int pos = len - 1;
    while (pos >= 0 && q[pos] == d - 1) q[pos--] = 0;
    if (pos < 0) break;
    ++q[pos];
  }
  return all;
}

}  // namespace macrorep

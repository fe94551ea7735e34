#pragma once

// Chain of M ensembles entangled by nearest-neighbour n^a n^a couplings,
// with x-basis measurements on the intermediate ensembles 2..M-1.
//
// The post-interaction state is never stored. Its projected amplitudes
// factorize into nearest-neighbour kernels over the odd-site number indices
// k_1, k_3, ..., so one outcome vector costs O(M N^3) dense work.

#include <cstdint>
#include <vector>

#include "macrorep/ensemble.hpp"
#include "macrorep/types.hpp"

namespace macrorep {

/// Sign pattern of the coupling. `alternating` is the physical convention
/// H = sum_j (-1)^j n_j n_{j+1}; `flipped` negates every bond and exists only
/// as a negative control for the oracle comparison.
enum class CouplingConvention { alternating, flipped };

struct ChainSpec {
  int m_sites;
  EnsembleDim dim;
  double time;    // interaction time t
  double offset;  // equatorial pre-measurement rotation phi
  CouplingConvention convention = CouplingConvention::alternating;

  ChainSpec(int m_sites, EnsembleDim dim, double time, double offset = 0.0);

  bool even() const { return m_sites % 2 == 0; }
  int intermediate_count() const { return m_sites - 2; }
  /// Time entering the engine's conditional angles.
  double signed_time() const {
    return convention == CouplingConvention::alternating ? time : -time;
  }
};

/// Outcomes q_2..q_{M-1}; element i belongs to site i + 2.
class OutcomeVector {
 public:
  OutcomeVector() = default;
  explicit OutcomeVector(std::vector<int> q) : q_(std::move(q)) {}

  /// Every intermediate outcome equal to N.
  static OutcomeVector all_max(const ChainSpec& spec);

  const std::vector<int>& values() const { return q_; }
  std::size_t size() const { return q_.size(); }
  bool empty() const { return q_.empty(); }
  int at_site(int site) const { return q_.at(site - 2); }

  /// Throws DomainError when the length is not M-2 or a value leaves [0, N].
  void validate(const ChainSpec& spec) const;

  bool operator==(const OutcomeVector&) const = default;

 private:
  std::vector<int> q_;
};

/// Amplitudes on |k_1>|k_M> of the two end ensembles. When produced by
/// projection the state is unnormalized and norm_sq is the outcome
/// probability.
class BipartiteState {
 public:
  BipartiteState(EnsembleDim dim, CMatrix amps);

  const EnsembleDim& dim() const { return dim_; }
  const CMatrix& amps() const { return amps_; }
  double norm_sq() const { return norm_sq_; }

  BipartiteState normalized() const;

 private:
  EnsembleDim dim_;
  CMatrix amps_;
  double norm_sq_;
};

/// Per-ensemble kernels shared by every evaluation at a given N: the
/// x-basis overlap table and the equatorial weights. Building it costs
/// O(N^3); reuse one across many outcome vectors.
class ChainEngine {
 public:
  explicit ChainEngine(EnsembleDim dim);

  const EnsembleDim& dim() const { return dim_; }
  const XBasisTable& xbasis() const { return xbasis_; }
  const std::vector<double>& weights() const { return weights_; }

  BipartiteState project(const ChainSpec& spec, const OutcomeVector& outcomes) const;

  struct Sample {
    OutcomeVector outcomes;
    double probability;
  };

  /// Draw q_2..q_{M-1} from the exact sequential conditionals.
  Sample sample(const ChainSpec& spec, std::uint64_t seed) const;

  /// P(q_j | q_2..q_{j-1}) for every q_j, where j = prefix.size() + 2.
  /// Sites after j are left unmeasured.
  std::vector<double> conditional_distribution(const ChainSpec& spec,
                                               const std::vector<int>& prefix) const;

 private:
  // Toeplitz kernel G[k][l] = <q|^(x)|coh((k - l) t + phi)>>.
  CMatrix even_site_kernel(int q, double t, double phi) const;
  // e^{i k phi} sqrt(C_N^k / 2^N) <q|^(x)|k>.
  CVector odd_site_diagonal(int q, double phi) const;

  EnsembleDim dim_;
  XBasisTable xbasis_;
  std::vector<double> weights_;
};

BipartiteState build_projected_state(const ChainSpec& spec, const OutcomeVector& outcomes);

double outcome_probability(const ChainSpec& spec, const OutcomeVector& outcomes);

ChainEngine::Sample sample_outcomes(const ChainSpec& spec, std::uint64_t rng_seed);

}  // namespace macrorep

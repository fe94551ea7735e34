#include "macrorep/chain.hpp"

#include <algorithm>
#include <string>

#include "macrorep/rng.hpp"

namespace macrorep {

namespace {

// <<coh(0)|coh(angle)>> = ((1 + e^{i angle}) / 2)^N
Complex equatorial_overlap(int n, double angle) {
  const double c = std::cos(0.5 * angle);
  if (c == 0.0) return {0.0, 0.0};
  double mag = std::pow(std::abs(c), n);
  if (c < 0 && n % 2 == 1) mag = -mag;
  return std::polar(mag, 0.5 * n * angle);
}

// Reduced density matrix (number basis) of intermediate site `site`, given
// the left environment over the neighbouring odd index and with every site
// to the right left unmeasured.
CMatrix site_density(const ChainSpec& spec, const std::vector<double>& w,
                     int site, const CMatrix& left) {
  const int n = spec.dim.n_atoms();
  const double t = spec.signed_time();
  const int d = n + 1;
  CMatrix rho(d, d);
  if (site % 2 == 0) {
    // Site state given odd neighbours (k, l) is coh((k - l) t); the right
    // odd neighbour is traced with weight C_N^l / 2^N.
    CMatrix f(d, d);
    for (int m = 0; m < d; ++m) {
      for (int k = 0; k < d; ++k) f(m, k) = std::polar(1.0, double(m) * k * t);
    }
    const CMatrix core = f * left * f.adjoint();
    for (int m = 0; m < d; ++m) {
      for (int mp = 0; mp < d; ++mp) {
        rho(m, mp) = w[m] * w[mp] * core(m, mp) *
                     equatorial_overlap(n, -double(m - mp) * t);
      }
    }
  } else {
    // The right even neighbour is unmeasured: tracing it leaves the overlap
    // of its two conditional coherent states.
    for (int k = 0; k < d; ++k) {
      for (int kp = 0; kp < d; ++kp) {
        rho(k, kp) = w[k] * w[kp] * left(k, kp) *
                     equatorial_overlap(n, double(k - kp) * t);
      }
    }
  }
  return rho;
}

std::vector<double> outcome_distribution(const XBasisTable& xb, const CMatrix& rho,
                                         double phi) {
  const int d = xb.dim().basis_size();
  CMatrix y(d, d);
  for (int q = 0; q < d; ++q) {
    for (int m = 0; m < d; ++m) y(q, m) = xb(q, m) * std::polar(1.0, m * phi);
  }
  const CMatrix yr = y * rho;
  std::vector<double> p(d);
  double total = 0.0;
  for (int q = 0; q < d; ++q) {
    p[q] = std::max(0.0, yr.row(q).dot(y.row(q)).real());
    total += p[q];
  }
  if (!(total > 0.0)) throw DomainError("sampler: prefix has zero probability");
  for (double& v : p) v /= total;
  return p;
}

}  // namespace

ChainSpec::ChainSpec(int m, EnsembleDim d, double t, double phi)
    : m_sites(m), dim(d), time(t), offset(phi) {
  if (m < 2) {
    throw DomainError("ChainSpec: need at least 2 sites, got " + std::to_string(m));
  }
}

OutcomeVector OutcomeVector::all_max(const ChainSpec& spec) {
  return OutcomeVector(std::vector<int>(spec.intermediate_count(), spec.dim.n_atoms()));
}

void OutcomeVector::validate(const ChainSpec& spec) const {
  if (static_cast<int>(q_.size()) != spec.intermediate_count()) {
    throw DomainError("outcome vector has length " + std::to_string(q_.size()) +
                      ", expected M-2 = " + std::to_string(spec.intermediate_count()));
  }
  for (std::size_t i = 0; i < q_.size(); ++i) {
    if (q_[i] < 0 || q_[i] > spec.dim.n_atoms()) {
      throw DomainError("outcome q_" + std::to_string(i + 2) + " = " +
                        std::to_string(q_[i]) + " outside [0, " +
                        std::to_string(spec.dim.n_atoms()) + "]");
    }
  }
}

BipartiteState::BipartiteState(EnsembleDim dim, CMatrix amps)
    : dim_(dim), amps_(std::move(amps)) {
  if (amps_.rows() != dim_.basis_size() || amps_.cols() != dim_.basis_size()) {
    throw DomainError("BipartiteState: amplitude matrix must be (N+1)x(N+1)");
  }
  norm_sq_ = amps_.squaredNorm();
}

BipartiteState BipartiteState::normalized() const {
  if (!(norm_sq_ > 0.0)) throw DomainError("BipartiteState: zero norm");
  return BipartiteState(dim_, amps_ / std::sqrt(norm_sq_));
}

ChainEngine::ChainEngine(EnsembleDim dim)
    : dim_(dim), xbasis_(dim), weights_(equatorial_weights(dim)) {}

CMatrix ChainEngine::even_site_kernel(int q, double t, double phi) const {
  const int n = dim_.n_atoms();
  std::vector<Complex> by_diff(2 * n + 1);
  for (int diff = -n; diff <= n; ++diff) {
    by_diff[diff + n] = xnumber_overlap_coherent(dim_, q, diff * t + phi);
  }
  CMatrix g(n + 1, n + 1);
  for (int k = 0; k <= n; ++k) {
    for (int l = 0; l <= n; ++l) g(k, l) = by_diff[k - l + n];
  }
  return g;
}

CVector ChainEngine::odd_site_diagonal(int q, double phi) const {
  const int n = dim_.n_atoms();
  CVector d(n + 1);
  for (int k = 0; k <= n; ++k) {
    d(k) = std::polar(weights_[k] * xbasis_(q, k), k * phi);
  }
  return d;
}

BipartiteState ChainEngine::project(const ChainSpec& spec,
                                    const OutcomeVector& outcomes) const {
  if (!(spec.dim == dim_)) throw DomainError("ChainEngine: ensemble size mismatch");
  outcomes.validate(spec);
  const int n = dim_.n_atoms();
  const double t = spec.signed_time();

  // Rows: k_1. Columns: number index of the most recent odd site.
  CMatrix acc = CMatrix::Zero(n + 1, n + 1);
  for (int k = 0; k <= n; ++k) acc(k, k) = weights_[k];

  for (int site = 2; site < spec.m_sites; ++site) {
    const int q = outcomes.at_site(site);
    if (site % 2 == 0) {
      acc = acc * even_site_kernel(q, t, spec.offset);
    } else {
      acc = acc * odd_site_diagonal(q, spec.offset).asDiagonal();
    }
  }

  if (spec.even()) {
    // Last ensemble stays a conditional coherent state coh(k_{M-1} t).
    CMatrix last(n + 1, n + 1);
    for (int k = 0; k <= n; ++k) {
      for (int l = 0; l <= n; ++l) last(k, l) = std::polar(weights_[l], double(k) * l * t);
    }
    acc = acc * last;
  } else {
    for (int l = 0; l <= n; ++l) acc.col(l) *= weights_[l];
  }
  return BipartiteState(dim_, std::move(acc));
}

std::vector<double> ChainEngine::conditional_distribution(
    const ChainSpec& spec, const std::vector<int>& prefix) const {
  if (!(spec.dim == dim_)) throw DomainError("ChainEngine: ensemble size mismatch");
  const int site = static_cast<int>(prefix.size()) + 2;
  if (site > spec.m_sites - 1) {
    throw DomainError("conditional_distribution: no intermediate site left to measure");
  }
  const int n = dim_.n_atoms();
  const double t = spec.signed_time();

  CMatrix left = CMatrix::Zero(n + 1, n + 1);
  for (int k = 0; k <= n; ++k) left(k, k) = weights_[k] * weights_[k];

  for (int s = 2; s < site; ++s) {
    const int q = prefix[s - 2];
    if (q < 0 || q > n) throw DomainError("conditional_distribution: outcome out of range");
    double p = 0.0;
    {
      const auto dist = outcome_distribution(xbasis_, site_density(spec, weights_, s, left),
                                             spec.offset);
      p = dist[q];
    }
    if (!(p > 0.0)) throw DomainError("conditional_distribution: prefix has zero probability");
    if (s % 2 == 0) {
      const CMatrix g = even_site_kernel(q, t, spec.offset);
      left = g.transpose() * left * g.conjugate();
    } else {
      const CVector dvec = odd_site_diagonal(q, spec.offset);
      left = dvec.asDiagonal() * left * dvec.conjugate().asDiagonal();
    }
    left /= p;
  }
  return outcome_distribution(xbasis_, site_density(spec, weights_, site, left), spec.offset);
}

ChainEngine::Sample ChainEngine::sample(const ChainSpec& spec, std::uint64_t seed) const {
  if (!(spec.dim == dim_)) throw DomainError("ChainEngine: ensemble size mismatch");
  SeededRng rng(seed);
  const int n = dim_.n_atoms();
  const double t = spec.signed_time();

  CMatrix left = CMatrix::Zero(n + 1, n + 1);
  for (int k = 0; k <= n; ++k) left(k, k) = weights_[k] * weights_[k];

  std::vector<int> drawn;
  double probability = 1.0;
  for (int site = 2; site < spec.m_sites; ++site) {
    const auto dist = outcome_distribution(
        xbasis_, site_density(spec, weights_, site, left), spec.offset);
    const int q = static_cast<int>(rng.discrete(dist));
    drawn.push_back(q);
    probability *= dist[q];
    if (site % 2 == 0) {
      const CMatrix g = even_site_kernel(q, t, spec.offset);
      left = g.transpose() * left * g.conjugate();
    } else {
      const CVector dvec = odd_site_diagonal(q, spec.offset);
      left = dvec.asDiagonal() * left * dvec.conjugate().asDiagonal();
    }
    left /= dist[q];
  }
  return {OutcomeVector(std::move(drawn)), probability};
}

BipartiteState build_projected_state(const ChainSpec& spec, const OutcomeVector& outcomes) {
  return ChainEngine(spec.dim).project(spec, outcomes);
}

double outcome_probability(const ChainSpec& spec, const OutcomeVector& outcomes) {
  return build_projected_state(spec, outcomes).norm_sq();
}

ChainEngine::Sample sample_outcomes(const ChainSpec& spec, std::uint64_t rng_seed) {
  return ChainEngine(spec.dim).sample(spec, rng_seed);
}

}  // namespace macrorep

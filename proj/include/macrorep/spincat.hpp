#pragma once

// Spin-cat states |C_m> (number states with k = m mod L), their Fourier
// relation to equatorial coherent states, the offset x-basis measurement of
// a cat and the outcome-to-branch classification.

#include <vector>

#include "macrorep/chain.hpp"
#include "macrorep/ensemble.hpp"

namespace macrorep {

/// Magic-time parameters: t = 2pi/L, measurement offset phi = pi/(2L).
struct MagicSpec {
  int l_branches;
  EnsembleDim dim;

  MagicSpec(int l, EnsembleDim d);

  double time() const { return kTwoPi / l_branches; }
  double offset() const { return kPi / (2.0 * l_branches); }
  /// L <= sqrt(N): neighbouring branches are nearly orthogonal.
  bool well_separated() const { return l_branches * l_branches <= dim.n_atoms(); }
};

/// log Z_m = log sum_{k = m mod L} C_N^k for m = 0..L-1, by log-sum-exp.
std::vector<double> log_cat_norms(EnsembleDim dim, int l_branches);

struct CatLabel {
  int l_branches;
  int residue;
  double log_norm_z;

  static CatLabel make(EnsembleDim dim, int l_branches, int residue);
};

/// Normalized |C_m>, supported on k = m (mod L).
FockVector cat_state(EnsembleDim dim, const CatLabel& label);

struct FourierReport {
  double forward_deviation;  // max_n || F_n - coh(-2 pi n / L) ||
  double inverse_deviation;  // max_m || |C_m> - inverse sum ||
  double bound;              // 10 cos^N(pi/L)
};

/// Measures both Fourier identities between cats and coherent states.
FourierReport cat_fourier_pair(EnsembleDim dim, int l_branches);

/// |<q|^(x) e^{i phi n^a}|C_m>|^2 for q = 0..N.
std::vector<double> rotated_cat_distribution(const XBasisTable& xbasis,
                                             const CatLabel& label, double phi);
std::vector<double> rotated_cat_distribution(EnsembleDim dim, const CatLabel& label,
                                             double phi);

enum class SiteParity { even, odd };

/// Gaussian-peak centre N cos^2(theta) of a branch label. Odd sites measure
/// cats and use theta = label pi/L - phi/2; even sites measure coherent
/// states and use theta = label pi/L + phi/2.
double q_peak(EnsembleDim dim, int l_branches, double phi, int label, SiteParity parity);

/// Label whose q_peak is closest to q; ties go to the smaller label.
int classify_outcome(EnsembleDim dim, int l_branches, double phi, int q, SiteParity parity);

/// Outcome distribution when a single branch has been selected: for odd
/// sites the cat component coh(-2 pi n / L + phi), for even sites the
/// coherent state coh(2 pi m / L + phi).
std::vector<double> branch_distribution(EnsembleDim dim, int l_branches, double phi,
                                        int label, SiteParity parity);

/// Probability that classify_outcome recovers the branch label, summed
/// exactly over outcomes with branches weighted uniformly.
double classification_success(EnsembleDim dim, int l_branches, double phi, SiteParity parity);

/// Per-site collapse labels. For even M the even labels belong to sites
/// 2, 4, ..., M-2 and the odd labels to 3, 5, ..., M-1; for odd M the even
/// labels cover 2, ..., M-1 and the odd labels 3, ..., M-2.
struct CollapseRecord {
  int l_branches = 1;
  int m_sites = 2;
  std::vector<int> even_labels;
  std::vector<int> odd_labels;
  int m_even_total = 0;  // sum of even labels mod L
  int n_odd_total = 0;   // sum of odd labels mod L

  static CollapseRecord from_labels(int l_branches, int m_sites, std::vector<int> even_labels,
                                    std::vector<int> odd_labels);
  /// Classify every intermediate outcome with the given offset.
  static CollapseRecord classify(const MagicSpec& spec, int m_sites,
                                 const OutcomeVector& outcomes, double phi);

  /// Labels in site order 2..M-1.
  std::vector<int> site_labels() const;
};

/// sum_m e^{2 pi i m n_odd / L} |C_m> (x) |end_m> / sqrt(L), where end_m is
/// coh(2 pi (m - m_even) / L) for even M and |C_{m - m_even}> for odd M.
BipartiteState approx_projected_state(const MagicSpec& spec, int m_sites,
                                      const CollapseRecord& record);

/// Even: sum_m |C_m> coh(2 pi m / L) / sqrt(L). Odd: sum_m |C_m>|C_m> / sqrt(L).
BipartiteState bell_cat_target(EnsembleDim dim, int l_branches, SiteParity parity);

/// sum_m |C_m>|C_{m - shift}> / sqrt(L).
BipartiteState shifted_cat_target(EnsembleDim dim, int l_branches, int shift);

}  // namespace macrorep

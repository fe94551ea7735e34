#include "macrorep/spincat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace macrorep {

namespace {

int mod(int a, int l) { return ((a % l) + l) % l; }

void check_branches(int l) {
  if (l < 1) throw DomainError("number of branches L must be >= 1, got " + std::to_string(l));
}

double max_deviation(const CVector& a, const CVector& b) { return (a - b).norm(); }

}  // namespace

MagicSpec::MagicSpec(int l, EnsembleDim d) : l_branches(l), dim(d) { check_branches(l); }

std::vector<double> log_cat_norms(EnsembleDim dim, int l_branches) {
  check_branches(l_branches);
  const int n = dim.n_atoms();
  std::vector<double> out(l_branches, -std::numeric_limits<double>::infinity());
  for (int m = 0; m < l_branches && m <= n; ++m) {
    double peak = -std::numeric_limits<double>::infinity();
    for (int k = m; k <= n; k += l_branches) peak = std::max(peak, log_binomial(n, k));
    double sum = 0.0;
    for (int k = m; k <= n; k += l_branches) sum += std::exp(log_binomial(n, k) - peak);
    out[m] = peak + std::log(sum);
  }
  return out;
}

CatLabel CatLabel::make(EnsembleDim dim, int l_branches, int residue) {
  check_branches(l_branches);
  if (residue < 0 || residue >= l_branches) {
    throw DomainError("cat residue " + std::to_string(residue) + " outside [0, L-1]");
  }
  return CatLabel{l_branches, residue, log_cat_norms(dim, l_branches)[residue]};
}

FockVector cat_state(EnsembleDim dim, const CatLabel& label) {
  if (!std::isfinite(label.log_norm_z)) {
    throw DomainError("cat_state: residue " + std::to_string(label.residue) +
                      " has no support for N = " + std::to_string(dim.n_atoms()));
  }
  CVector amps = CVector::Zero(dim.basis_size());
  for (int k = label.residue; k <= dim.n_atoms(); k += label.l_branches) {
    amps(k) = std::exp(0.5 * (log_binomial(dim.n_atoms(), k) - label.log_norm_z));
  }
  return FockVector(dim, std::move(amps));
}

FourierReport cat_fourier_pair(EnsembleDim dim, int l_branches) {
  check_branches(l_branches);
  const int l = l_branches;
  const double inv_sqrt_l = 1.0 / std::sqrt(double(l));
  const auto norms = log_cat_norms(dim, l);

  std::vector<CVector> cats;
  std::vector<CVector> cohs;
  for (int m = 0; m < l; ++m) {
    cats.push_back(std::isfinite(norms[m]) ? cat_state(dim, CatLabel{l, m, norms[m]}).amps()
                                           : CVector(CVector::Zero(dim.basis_size())));
    cohs.push_back(equatorial_coherent(dim, -kTwoPi * m / l).amps());
  }

  FourierReport report{0.0, 0.0, 10.0 * std::pow(std::abs(std::cos(kPi / l)), dim.n_atoms())};
  for (int n = 0; n < l; ++n) {
    CVector forward = CVector::Zero(dim.basis_size());
    for (int m = 0; m < l; ++m) forward += std::polar(inv_sqrt_l, -kTwoPi * n * m / l) * cats[m];
    report.forward_deviation = std::max(report.forward_deviation, max_deviation(forward, cohs[n]));
  }
  for (int m = 0; m < l; ++m) {
    CVector inverse = CVector::Zero(dim.basis_size());
    for (int n = 0; n < l; ++n) inverse += std::polar(inv_sqrt_l, kTwoPi * n * m / l) * cohs[n];
    report.inverse_deviation = std::max(report.inverse_deviation, max_deviation(inverse, cats[m]));
  }
  return report;
}

std::vector<double> rotated_cat_distribution(const XBasisTable& xbasis, const CatLabel& label,
                                             double phi) {
  const EnsembleDim dim = xbasis.dim();
  const CVector rotated = phase_rotation(cat_state(dim, label), phi).amps();
  const CVector amps = xbasis.matrix().cast<Complex>() * rotated;
  std::vector<double> p(dim.basis_size());
  for (int q = 0; q < dim.basis_size(); ++q) p[q] = std::norm(amps(q));
  return p;
}

std::vector<double> rotated_cat_distribution(EnsembleDim dim, const CatLabel& label,
                                             double phi) {
  return rotated_cat_distribution(XBasisTable(dim), label, phi);
}

double q_peak(EnsembleDim dim, int l_branches, double phi, int label, SiteParity parity) {
  check_branches(l_branches);
  const double half = (parity == SiteParity::odd) ? -0.5 * phi : 0.5 * phi;
  const double c = std::cos(label * kPi / l_branches + half);
  return dim.n_atoms() * c * c;
}

int classify_outcome(EnsembleDim dim, int l_branches, double phi, int q, SiteParity parity) {
  if (q < 0 || q > dim.n_atoms()) {
    throw DomainError("classify_outcome: q = " + std::to_string(q) + " outside [0, N]");
  }
  int best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (int label = 0; label < l_branches; ++label) {
    const double dist = std::abs(q - q_peak(dim, l_branches, phi, label, parity));
    if (dist < best_dist) {
      best = label;
      best_dist = dist;
    }
  }
  return best;
}

std::vector<double> branch_distribution(EnsembleDim dim, int l_branches, double phi, int label,
                                        SiteParity parity) {
  check_branches(l_branches);
  const double alpha = (parity == SiteParity::odd) ? -kTwoPi * label / l_branches + phi
                                                   : kTwoPi * label / l_branches + phi;
  std::vector<double> p(dim.basis_size());
  for (int q = 0; q <= dim.n_atoms(); ++q) p[q] = std::norm(xnumber_overlap_coherent(dim, q, alpha));
  return p;
}

double classification_success(EnsembleDim dim, int l_branches, double phi, SiteParity parity) {
  double success = 0.0;
  for (int label = 0; label < l_branches; ++label) {
    const auto p = branch_distribution(dim, l_branches, phi, label, parity);
    for (int q = 0; q <= dim.n_atoms(); ++q) {
      if (classify_outcome(dim, l_branches, phi, q, parity) == label) success += p[q];
    }
  }
  return success / l_branches;
}

CollapseRecord CollapseRecord::from_labels(int l_branches, int m_sites,
                                           std::vector<int> even_labels,
                                           std::vector<int> odd_labels) {
  check_branches(l_branches);
  if (m_sites < 2) throw DomainError("CollapseRecord: need at least 2 sites");
  const std::size_t want_even = (m_sites % 2 == 0) ? (m_sites - 2) / 2 : (m_sites - 1) / 2;
  const std::size_t want_odd = (m_sites % 2 == 0) ? (m_sites - 2) / 2 : (m_sites - 3) / 2;
  if (even_labels.size() != want_even || odd_labels.size() != want_odd) {
    throw DomainError("CollapseRecord: M = " + std::to_string(m_sites) + " needs " +
                      std::to_string(want_even) + " even and " + std::to_string(want_odd) +
                      " odd labels");
  }
  CollapseRecord rec;
  rec.l_branches = l_branches;
  rec.m_sites = m_sites;
  for (int v : even_labels) {
    if (v < 0 || v >= l_branches) throw DomainError("CollapseRecord: label outside [0, L-1]");
    rec.m_even_total = mod(rec.m_even_total + v, l_branches);
  }
  for (int v : odd_labels) {
    if (v < 0 || v >= l_branches) throw DomainError("CollapseRecord: label outside [0, L-1]");
    rec.n_odd_total = mod(rec.n_odd_total + v, l_branches);
  }
  rec.even_labels = std::move(even_labels);
  rec.odd_labels = std::move(odd_labels);
  return rec;
}

CollapseRecord CollapseRecord::classify(const MagicSpec& spec, int m_sites,
                                        const OutcomeVector& outcomes, double phi) {
  if (static_cast<int>(outcomes.size()) != m_sites - 2) {
    throw DomainError("CollapseRecord::classify: outcome vector length mismatch");
  }
  std::vector<int> even, odd;
  for (int site = 2; site < m_sites; ++site) {
    const int q = outcomes.at_site(site);
    if (site % 2 == 0) {
      even.push_back(classify_outcome(spec.dim, spec.l_branches, phi, q, SiteParity::even));
    } else {
      odd.push_back(classify_outcome(spec.dim, spec.l_branches, phi, q, SiteParity::odd));
    }
  }
  return from_labels(spec.l_branches, m_sites, std::move(even), std::move(odd));
}

std::vector<int> CollapseRecord::site_labels() const {
  std::vector<int> out;
  for (int site = 2; site < m_sites; ++site) {
    const std::size_t i = (site - 2) / 2;
    out.push_back(site % 2 == 0 ? even_labels.at(i) : odd_labels.at(i));
  }
  return out;
}

BipartiteState approx_projected_state(const MagicSpec& spec, int m_sites,
                                      const CollapseRecord& record) {
  if (record.m_sites != m_sites || record.l_branches != spec.l_branches) {
    throw DomainError("approx_projected_state: record does not match chain");
  }
  const int l = spec.l_branches;
  const auto norms = log_cat_norms(spec.dim, l);
  const double inv_sqrt_l = 1.0 / std::sqrt(double(l));
  CMatrix amps = CMatrix::Zero(spec.dim.basis_size(), spec.dim.basis_size());
  for (int m = 0; m < l; ++m) {
    if (!std::isfinite(norms[m])) continue;
    const CVector first = cat_state(spec.dim, CatLabel{l, m, norms[m]}).amps();
    const int shifted = mod(m - record.m_even_total, l);
    CVector last;
    if (m_sites % 2 == 0) {
      last = equatorial_coherent(spec.dim, kTwoPi * shifted / l).amps();
    } else {
      if (!std::isfinite(norms[shifted])) continue;
      last = cat_state(spec.dim, CatLabel{l, shifted, norms[shifted]}).amps();
    }
    amps += std::polar(inv_sqrt_l, kTwoPi * m * record.n_odd_total / l) * first * last.transpose();
  }
  return BipartiteState(spec.dim, std::move(amps)).normalized();
}

BipartiteState bell_cat_target(EnsembleDim dim, int l_branches, SiteParity parity) {
  if (parity == SiteParity::odd) return shifted_cat_target(dim, l_branches, 0);
  const auto norms = log_cat_norms(dim, l_branches);
  CMatrix amps = CMatrix::Zero(dim.basis_size(), dim.basis_size());
  for (int m = 0; m < l_branches; ++m) {
    if (!std::isfinite(norms[m])) continue;
    amps += cat_state(dim, CatLabel{l_branches, m, norms[m]}).amps() *
            equatorial_coherent(dim, kTwoPi * m / l_branches).amps().transpose();
  }
  return BipartiteState(dim, std::move(amps)).normalized();
}

BipartiteState shifted_cat_target(EnsembleDim dim, int l_branches, int shift) {
  check_branches(l_branches);
  const auto norms = log_cat_norms(dim, l_branches);
  CMatrix amps = CMatrix::Zero(dim.basis_size(), dim.basis_size());
  for (int m = 0; m < l_branches; ++m) {
    const int other = mod(m - shift, l_branches);
    if (!std::isfinite(norms[m]) || !std::isfinite(norms[other])) continue;
    amps += cat_state(dim, CatLabel{l_branches, m, norms[m]}).amps() *
            cat_state(dim, CatLabel{l_branches, other, norms[other]}).amps().transpose();
  }
  return BipartiteState(dim, std::move(amps)).normalized();
}

}  // namespace macrorep

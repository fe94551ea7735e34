#include "macrorep/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace macrorep {

DensityMatrix::DensityMatrix(EnsembleDim dim, CMatrix entries)
    : dim_(dim), entries_(std::move(entries)) {
  const int d = dim_.basis_size();
  if (entries_.rows() != d || entries_.cols() != d) {
    throw DomainError("DensityMatrix: expected " + std::to_string(d) + "x" +
                      std::to_string(d) + " entries");
  }
  const double herm_err = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (herm_err > 1e-12) {
    throw DomainError("DensityMatrix: not Hermitian (max deviation " +
                      std::to_string(herm_err) + ")");
  }
  const double tr = entries_.trace().real();
  if (std::abs(tr - 1.0) > 1e-10) {
    throw DomainError("DensityMatrix: trace " + std::to_string(tr) + " != 1");
  }
}

DensityMatrix reduced_density(const BipartiteState& state, Keep keep) {
  if (!(state.norm_sq() > 0.0)) {
    throw DomainError("reduced_density: zero-norm state (impossible outcome)");
  }
  const CMatrix psi = state.amps() / std::sqrt(state.norm_sq());
  CMatrix rho = (keep == Keep::first) ? CMatrix(psi * psi.adjoint())
                                      : CMatrix(psi.transpose() * psi.conjugate());
  // Remove rounding-level anti-Hermitian residue.
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(state.dim(), std::move(rho));
}

Eigensystem hermitian_eigensystem(const CMatrix& mat, double herm_tol) {
  const int n = static_cast<int>(mat.rows());
  if (mat.cols() != n) throw DomainError("hermitian_eigensystem: matrix not square");
  const double scale = std::max(1.0, mat.norm());
  const double herm_err = (mat - mat.adjoint()).cwiseAbs().maxCoeff();
  if (herm_err > herm_tol * scale) {
    throw DomainError("hermitian_eigensystem: input not Hermitian (max deviation " +
                      std::to_string(herm_err) + ")");
  }

  CMatrix a = 0.5 * (mat + mat.adjoint());
  CMatrix v = CMatrix::Identity(n, n);
  const double threshold = 1e-13 * scale;

  auto off_norm = [&]() {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };

  int sweep = 0;
  for (; sweep < 100 && off_norm() > threshold; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag < 1e-300) continue;
        const Complex e = apq / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // J = diag(1, conj(e)) * [[c, s], [-s, c]] on the (p, q) plane.
        const Complex jqp = -s * std::conj(e);
        const Complex jqq = c * std::conj(e);
        for (int k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * c + akq * jqp;
          a(k, q) = akp * s + akq * jqq;
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * c + vkq * jqp;
          v(k, q) = vkp * s + vkq * jqq;
        }
        for (int k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk + std::conj(jqp) * aqk;
          a(q, k) = s * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return a(i, i).real() > a(j, j).real(); });
  Eigensystem out{std::vector<double>(n), CMatrix(n, n), sweep};
  for (int i = 0; i < n; ++i) {
    out.values[i] = a(order[i], order[i]).real();
    out.vectors.col(i) = v.col(order[i]);
  }
  return out;
}

Spectrum hermitian_eigenvalues(const DensityMatrix& mat) {
  auto values = hermitian_eigensystem(mat.entries(), 1e-12).values;
  double total = 0.0;
  for (double& lam : values) {
    if (lam < -1e-10) {
      throw DomainError("hermitian_eigenvalues: eigenvalue " + std::to_string(lam) +
                        " below the -1e-10 clamp window");
    }
    if (lam < 1e-14) lam = 0.0;
    total += lam;
  }
  for (double& lam : values) lam /= total;
  return Spectrum{std::move(values)};
}

double von_neumann_entropy(const Spectrum& spectrum) {
  double e = 0.0;
  for (double lam : spectrum.eigenvalues) {
    if (lam > 0.0) e -= lam * std::log2(lam);
  }
  return e;
}

double entanglement_entropy(const BipartiteState& state) {
  return von_neumann_entropy(hermitian_eigenvalues(reduced_density(state, Keep::first)));
}

double fidelity(const BipartiteState& a, const BipartiteState& b) {
  if (!(a.dim() == b.dim())) throw DomainError("fidelity: dimension mismatch");
  if (!(a.norm_sq() > 0.0) || !(b.norm_sq() > 0.0)) {
    throw DomainError("fidelity: zero-norm state");
  }
  const Complex overlap = (a.amps().array().conjugate() * b.amps().array()).sum();
  return std::norm(overlap) / (a.norm_sq() * b.norm_sq());
}

BipartiteState target_m2(EnsembleDim dim, double t) {
  const auto w = equatorial_weights(dim);
  const int d = dim.basis_size();
  CMatrix amps(d, d);
  for (int k1 = 0; k1 < d; ++k1) {
    for (int k2 = 0; k2 < d; ++k2) amps(k1, k2) = std::polar(w[k1] * w[k2], double(k1) * k2 * t);
  }
  return BipartiteState(dim, std::move(amps));
}

BipartiteState target_m3(EnsembleDim dim, double t) {
  const auto w = equatorial_weights(dim);
  const int n = dim.n_atoms();
  std::vector<Complex> omega(2 * n + 1);
  for (int diff = -n; diff <= n; ++diff) omega[diff + n] = xnumber_overlap_coherent(dim, n, diff * t);
  CMatrix amps(n + 1, n + 1);
  for (int k1 = 0; k1 <= n; ++k1) {
    for (int k3 = 0; k3 <= n; ++k3) amps(k1, k3) = w[k1] * w[k3] * omega[k1 - k3 + n];
  }
  return BipartiteState(dim, std::move(amps)).normalized();
}

BipartiteState parity_target(EnsembleDim dim, double t, int m_sites) {
  return (m_sites % 2 == 0) ? target_m2(dim, t) : target_m3(dim, t);
}

}  // namespace macrorep

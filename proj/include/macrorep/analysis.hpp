#pragma once

#include <vector>

#include "macrorep/chain.hpp"
#include "macrorep/types.hpp"

namespace macrorep {

/// Unit-trace Hermitian matrix of one ensemble. Construction validates
/// hermiticity (1e-12) and trace (1e-10).
class DensityMatrix {
 public:
  DensityMatrix(EnsembleDim dim, CMatrix entries);

  const EnsembleDim& dim() const { return dim_; }
  const CMatrix& entries() const { return entries_; }

 private:
  EnsembleDim dim_;
  CMatrix entries_;
};

/// Eigenvalues in descending order, each in [0, 1], summing to 1.
struct Spectrum {
  std::vector<double> eigenvalues;
};

enum class Keep { first, last };

/// Partial trace of |psi><psi| / norm_sq over the other end ensemble.
DensityMatrix reduced_density(const BipartiteState& state, Keep keep);

struct Eigensystem {
  std::vector<double> values;  // descending
  CMatrix vectors;             // column i belongs to values[i]
  int sweeps;
};

/// Cyclic complex Jacobi diagonalization of a Hermitian matrix. Stops when
/// the off-diagonal Frobenius norm drops below 1e-13 * max(1, ||A||_F) or
/// after 100 sweeps. Throws DomainError for a non-Hermitian input.
Eigensystem hermitian_eigensystem(const CMatrix& mat, double herm_tol = 1e-10);

/// Spectrum of a density matrix. Eigenvalues in (-1e-10, 1e-14) become 0;
/// anything below -1e-10 is an error. The rest are renormalized to unit sum.
Spectrum hermitian_eigenvalues(const DensityMatrix& mat);

/// -sum lambda log2 lambda, with 0 log 0 = 0.
double von_neumann_entropy(const Spectrum& spectrum);

/// Entanglement entropy (bits) between the two ends of a pure state.
double entanglement_entropy(const BipartiteState& state);

/// |<a|b>|^2 / (<a|a><b|b>).
double fidelity(const BipartiteState& a, const BipartiteState& b);

/// Two-ensemble state exp(i n_1 n_2 t)|+>|+>.
BipartiteState target_m2(EnsembleDim dim, double t);

/// Three-ensemble state projected on q_2 = N with no offset, normalized.
BipartiteState target_m3(EnsembleDim dim, double t);

/// target_m2 for even chain lengths, target_m3 for odd ones.
BipartiteState parity_target(EnsembleDim dim, double t, int m_sites);

}  // namespace macrorep

#pragma once

// Single-ensemble math in the symmetric (Schwinger boson) subspace:
// binomials, spin coherent states, x-basis number-state overlaps and
// equatorial phase rotations.

#include <vector>

#include "macrorep/types.hpp"

namespace macrorep {

/// Natural log of C(n, k) via log-gamma. Throws DomainError unless 0 <= k <= n.
double log_binomial(long n, long k);

/// Amplitudes of one ensemble over the number states |0>..|N>.
class FockVector {
 public:
  FockVector(EnsembleDim dim, CVector amps);

  const EnsembleDim& dim() const { return dim_; }
  const CVector& amps() const { return amps_; }
  Complex operator[](int k) const { return amps_(k); }

  double squared_norm() const { return amps_.squaredNorm(); }
  bool is_normalized(double tol = 1e-12) const {
    return std::abs(squared_norm() - 1.0) <= tol;
  }

  /// <this|other>
  Complex inner(const FockVector& other) const;

 private:
  EnsembleDim dim_;
  CVector amps_;
};

/// Equatorial spin coherent state |e^{i alpha}/sqrt2, 1/sqrt2>>.
struct EquatorialCoherent {
  EnsembleDim dim;
  double alpha;

  FockVector fock() const;
  /// Same Bloch-sphere point, comparing alpha modulo 2pi.
  bool same_point(const EquatorialCoherent& other, double tol = 1e-12) const;
};

/// Spin coherent state with amplitude sqrt(C_N^k) a^k b^(N-k) on |k>.
/// Throws PreconditionError unless |a|^2 + |b|^2 = 1 within 1e-10.
FockVector coherent_fock(EnsembleDim dim, Complex alpha_weight,
                         Complex beta_weight);

/// sqrt(C_N^k / 2^N) for k = 0..N: the number-basis weights of the
/// equatorial coherent states.
std::vector<double> equatorial_weights(EnsembleDim dim);

/// Fock amplitudes of EquatorialCoherent{dim, alpha}.
FockVector equatorial_coherent(EnsembleDim dim, double alpha);

/// <q|^(x)|k> from the explicit double sum over binomials, evaluated with
/// exact integer arithmetic and converted through log-magnitude and sign.
///
/// The x-basis states are |q>^(x) = e^{-i S^y pi/4}|q>. The double sum
/// differs from rows of that rotation by the sign (-1)^(N-q); the sign is a
/// per-outcome global phase and drops out of every probability and every
/// normalized projected state. The double sum is the convention used
/// throughout this library.
double xnumber_overlap_fock(EnsembleDim dim, int q, int k);

/// <q|^(x)|e^{i alpha}/sqrt2, 1/sqrt2>> in closed form:
/// i^(N-q) e^{i N alpha/2} sqrt(C_N^q) cos^q(alpha/2) sin^(N-q)(alpha/2).
Complex xnumber_overlap_coherent(EnsembleDim dim, int q, double alpha);

/// Full (N+1)x(N+1) table of xnumber_overlap_fock, rows indexed by outcome q
/// and columns by number index k. Built once per ensemble size in O(N^3)
/// exact integer additions.
class XBasisTable {
 public:
  explicit XBasisTable(EnsembleDim dim);

  const EnsembleDim& dim() const { return dim_; }
  double operator()(int q, int k) const { return table_(q, k); }
  const RMatrix& matrix() const { return table_; }

 private:
  EnsembleDim dim_;
  RMatrix table_;
};

/// Multiply the amplitude on |k> by e^{i k phi} (the rotation e^{i phi n^a}).
FockVector phase_rotation(const FockVector& state, double phi);

enum class SpinAxis { x, y, z, number };

/// Dense matrix of S^x, S^y, S^z or n^a in the number basis. Test utility,
/// refused for N > 30.
CMatrix spin_operator_matrix(EnsembleDim dim, SpinAxis axis);

}  // namespace macrorep

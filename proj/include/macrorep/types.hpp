#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace macrorep {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Input outside the mathematical domain of an operation (bad index,
// mismatched dimensions, zero-norm state, oversize oracle request).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Caller broke a documented precondition (e.g. non-normalized weights).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Number of bosons (qubits) per ensemble. The Fock basis is |0>..|N>,
// where |k> carries k bosons in mode a and S^z|k> = (2k - N)|k>.
class EnsembleDim {
 public:
  explicit EnsembleDim(int n_atoms) : n_atoms_(n_atoms) {
    if (n_atoms < 1) {
      throw DomainError("EnsembleDim: n_atoms must be >= 1, got " +
                        std::to_string(n_atoms));
    }
  }

  int n_atoms() const { return n_atoms_; }
  int basis_size() const { return n_atoms_ + 1; }

  bool operator==(const EnsembleDim&) const = default;

 private:
  int n_atoms_;
};

// Reduce an angle into [0, 2pi). Used for comparisons only; computations
// keep the raw angle so that odd-N half-angle phases stay consistent.
inline double reduce_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0) r += kTwoPi;
  return r;
}

}  // namespace macrorep

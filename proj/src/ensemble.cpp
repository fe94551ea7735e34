#include "macrorep/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace macrorep {

namespace {

using BigInt = boost::multiprecision::cpp_int;

constexpr double kLn2 = 0.69314718055994530942;

void check_index(const EnsembleDim& dim, int idx, const char* what) {
  if (idx < 0 || idx > dim.n_atoms()) {
    throw DomainError(std::string(what) + " index " + std::to_string(idx) +
                      " outside [0, " + std::to_string(dim.n_atoms()) + "]");
  }
}

double log_abs(const BigInt& v) {
  BigInt a = boost::multiprecision::abs(v);
  const unsigned msb = boost::multiprecision::msb(a);
  if (msb < 1000) return std::log(a.convert_to<double>());
  const unsigned shift = msb - 62;
  BigInt top = a >> shift;
  return std::log(top.convert_to<double>()) + shift * kLn2;
}

// Row n of Pascal's triangle, exact.
std::vector<BigInt> binomial_row(int n) {
  std::vector<BigInt> row(n + 1);
  row[0] = 1;
  for (int m = 0; m < n; ++m) row[m + 1] = row[m] * (n - m) / (m + 1);
  return row;
}

// Common prefactor 1/sqrt(q!(N-q)! 2^N) * sqrt(k!(N-k)!) in log form.
double log_prefactor(int n, int q, int k) {
  return 0.5 * (std::lgamma(k + 1.0) + std::lgamma(n - k + 1.0) -
                std::lgamma(q + 1.0) - std::lgamma(n - q + 1.0) - n * kLn2);
}

double signed_exp(const BigInt& s, double log_scale) {
  if (s == 0) return 0.0;
  const double mag = std::exp(log_abs(s) + log_scale);
  return s < 0 ? -mag : mag;
}

Complex i_power(int e) {
  switch (((e % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace

double log_binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) {
    throw DomainError("log_binomial: need 0 <= k <= n, got n=" +
                      std::to_string(n) + " k=" + std::to_string(k));
  }
  if (k == 0 || k == n) return 0.0;
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

FockVector::FockVector(EnsembleDim dim, CVector amps)
    : dim_(dim), amps_(std::move(amps)) {
  if (amps_.size() != dim_.basis_size()) {
    throw DomainError("FockVector: expected " +
                      std::to_string(dim_.basis_size()) + " amplitudes, got " +
                      std::to_string(amps_.size()));
  }
  if (!amps_.allFinite()) throw DomainError("FockVector: non-finite amplitude");
}

Complex FockVector::inner(const FockVector& other) const {
  if (!(dim_ == other.dim_)) throw DomainError("FockVector::inner: dimension mismatch");
  return amps_.dot(other.amps_);
}

FockVector EquatorialCoherent::fock() const {
  return equatorial_coherent(dim, alpha);
}

bool EquatorialCoherent::same_point(const EquatorialCoherent& other,
                                    double tol) const {
  if (!(dim == other.dim)) return false;
  double d = std::abs(reduce_angle(alpha) - reduce_angle(other.alpha));
  return std::min(d, kTwoPi - d) <= tol;
}

FockVector coherent_fock(EnsembleDim dim, Complex alpha_weight,
                         Complex beta_weight) {
  const double norm = std::norm(alpha_weight) + std::norm(beta_weight);
  if (std::abs(norm - 1.0) > 1e-10) {
    throw PreconditionError("coherent_fock: |alpha|^2 + |beta|^2 = " +
                            std::to_string(norm) + ", expected 1");
  }
  const int n = dim.n_atoms();
  CVector amps = CVector::Zero(dim.basis_size());
  const double la = std::abs(alpha_weight);
  const double lb = std::abs(beta_weight);
  const double pa = std::arg(alpha_weight);
  const double pb = std::arg(beta_weight);
  for (int k = 0; k <= n; ++k) {
    // 0^0 = 1 so the extremal states come out exactly.
    if ((la == 0.0 && k > 0) || (lb == 0.0 && k < n)) continue;
    double logmag = 0.5 * log_binomial(n, k);
    if (k > 0) logmag += k * std::log(la);
    if (k < n) logmag += (n - k) * std::log(lb);
    amps(k) = std::polar(std::exp(logmag), k * pa + (n - k) * pb);
  }
  return FockVector(dim, std::move(amps));
}

std::vector<double> equatorial_weights(EnsembleDim dim) {
  const int n = dim.n_atoms();
  std::vector<double> w(n + 1);
  for (int k = 0; k <= n; ++k) {
    w[k] = std::exp(0.5 * (log_binomial(n, k) - n * kLn2));
  }
  return w;
}

FockVector equatorial_coherent(EnsembleDim dim, double alpha) {
  const auto w = equatorial_weights(dim);
  CVector amps(dim.basis_size());
  for (int k = 0; k <= dim.n_atoms(); ++k) amps(k) = std::polar(w[k], k * alpha);
  return FockVector(dim, std::move(amps));
}

double xnumber_overlap_fock(EnsembleDim dim, int q, int k) {
  check_index(dim, q, "outcome");
  check_index(dim, k, "number");
  const int n = dim.n_atoms();
  const auto cq = binomial_row(q);
  const auto cr = binomial_row(n - q);
  BigInt s = 0;
  for (int l = 0; l <= q; ++l) {
    const int m = k - l;
    if (m < 0 || m > n - q) continue;
    if ((n - q - m) % 2 == 0) {
      s += cq[l] * cr[m];
    } else {
      s -= cq[l] * cr[m];
    }
  }
  return signed_exp(s, log_prefactor(n, q, k));
}

Complex xnumber_overlap_coherent(EnsembleDim dim, int q, double alpha) {
  check_index(dim, q, "outcome");
  const int n = dim.n_atoms();
  const double c = std::cos(0.5 * alpha);
  const double s = std::sin(0.5 * alpha);
  if ((c == 0.0 && q > 0) || (s == 0.0 && q < n)) return {0.0, 0.0};
  double logmag = 0.5 * log_binomial(n, q);
  bool negative = false;
  if (q > 0) {
    logmag += q * std::log(std::abs(c));
    negative ^= (c < 0 && q % 2 == 1);
  }
  if (q < n) {
    logmag += (n - q) * std::log(std::abs(s));
    negative ^= (s < 0 && (n - q) % 2 == 1);
  }
  const double mag = negative ? -std::exp(logmag) : std::exp(logmag);
  return i_power(n - q) * std::polar(mag, 0.5 * n * alpha);
}

XBasisTable::XBasisTable(EnsembleDim dim)
    : dim_(dim), table_(dim.basis_size(), dim.basis_size()) {
  const int n = dim.n_atoms();
  // Row q is the coefficient list of (1+z)^q (z-1)^(N-q), scaled.
  for (int q = 0; q <= n; ++q) {
    const auto base = binomial_row(n - q);
    std::vector<BigInt> poly(n + 1, 0);
    for (int m = 0; m <= n - q; ++m) {
      poly[m] = ((n - q - m) % 2 == 0) ? base[m] : BigInt(-base[m]);
    }
    int degree = n - q;
    for (int step = 0; step < q; ++step) {
      ++degree;
      for (int i = degree; i >= 1; --i) poly[i] += poly[i - 1];
    }
    for (int k = 0; k <= n; ++k) {
      table_(q, k) = signed_exp(poly[k], log_prefactor(n, q, k));
    }
  }
}

FockVector phase_rotation(const FockVector& state, double phi) {
  CVector amps = state.amps();
  for (int k = 0; k < amps.size(); ++k) amps(k) *= std::polar(1.0, k * phi);
  return FockVector(state.dim(), std::move(amps));
}

CMatrix spin_operator_matrix(EnsembleDim dim, SpinAxis axis) {
  const int n = dim.n_atoms();
  if (n > 30) {
    throw DomainError("spin_operator_matrix: refused for N > 30 (got " +
                      std::to_string(n) + ")");
  }
  CMatrix op = CMatrix::Zero(n + 1, n + 1);
  const Complex i1(0.0, 1.0);
  for (int k = 0; k <= n; ++k) {
    switch (axis) {
      case SpinAxis::z: op(k, k) = 2.0 * k - n; break;
      case SpinAxis::number: op(k, k) = k; break;
      case SpinAxis::x:
      case SpinAxis::y: {
        if (k == n) break;
        // a^dag b |k> = sqrt((k+1)(N-k)) |k+1>
        const double up = std::sqrt((k + 1.0) * (n - k));
        if (axis == SpinAxis::x) {
          op(k + 1, k) += up;
          op(k, k + 1) += up;
        } else {
          op(k + 1, k) += -i1 * up;
          op(k, k + 1) += i1 * up;
        }
        break;
      }
    }
  }
  return op;
}

}  // namespace macrorep

#pragma once

// Test-only reference computations. Nothing here calls into the engine's
// contraction path; each routine is an independent way to get a number the
// library also produces.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using BigInt = boost::multiprecision::cpp_int;

// Exact C(n, k) as a product of integers.
inline BigInt exact_binomial(long n, long k) {
  BigInt r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline double log_of(const BigInt& v) {
  const unsigned msb = boost::multiprecision::msb(v);
  if (msb < 1000) return std::log(v.convert_to<double>());
  const unsigned shift = msb - 62;
  BigInt top = v >> shift;
  return std::log(top.convert_to<double>()) + shift * std::log(2.0);
}

// exp(A) by scaling and squaring with a truncated Taylor series.
inline CMatrix matrix_exp(const CMatrix& a) {
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  while (norm / std::pow(2.0, squarings) > 0.25) ++squarings;
  const CMatrix scaled = a / std::pow(2.0, squarings);
  CMatrix result = CMatrix::Identity(a.rows(), a.cols());
  CMatrix term = CMatrix::Identity(a.rows(), a.cols());
  for (int i = 1; i <= 30; ++i) {
    term = term * scaled / double(i);
    result += term;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

// Characteristic polynomial coefficients c_0..c_n of det(x I - A) by
// Faddeev-LeVerrier, then real roots by sign scanning and bisection.
// Valid for small Hermitian matrices with well-separated eigenvalues.
inline std::vector<double> charpoly_eigenvalues(const CMatrix& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<Complex> c(n + 1);
  c[n] = 1.0;
  CMatrix m = CMatrix::Zero(n, n);
  for (int k = 1; k <= n; ++k) {
    m = a * m + c[n - k + 1] * CMatrix::Identity(n, n);
    c[n - k] = -(a * m).trace() / double(k);
  }
  auto poly = [&](double x) {
    double v = 0.0;
    for (int i = n; i >= 0; --i) v = v * x + c[i].real();
    return v;
  };
  const double bound = a.norm() + 1.0;
  const int steps = 200000;
  std::vector<double> roots;
  double prev_x = -bound, prev_v = poly(prev_x);
  for (int s = 1; s <= steps; ++s) {
    const double x = -bound + 2.0 * bound * s / steps;
    const double v = poly(x);
    if ((prev_v <= 0.0) != (v <= 0.0)) {
      double lo = prev_x, hi = x, vlo = prev_v;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double vm = poly(mid);
        if ((vm <= 0.0) == (vlo <= 0.0)) {
          lo = mid;
          vlo = vm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prev_x = x;
    prev_v = v;
  }
  std::sort(roots.rbegin(), roots.rend());
  return roots;
}

inline CMatrix random_hermitian(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = Complex(u(rng), u(rng));
  return 0.5 * (a + a.adjoint());
}

// Entropy in bits of the first subsystem of a pure bipartite amplitude
// matrix, via an explicit partial trace and Eigen's solver.
inline double brute_entropy(const CMatrix& amps) {
  const int d = static_cast<int>(amps.rows());
  const double norm = amps.squaredNorm();
  CMatrix rho = CMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < amps.cols(); ++k) rho(i, j) += amps(i, k) * std::conj(amps(j, k)) / norm;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho);
  double e = 0.0;
  for (int i = 0; i < d; ++i) {
    const double lam = es.eigenvalues()(i);
    if (lam > 1e-300) e -= lam * std::log2(lam);
  }
  return e;
}

}  // namespace oracle

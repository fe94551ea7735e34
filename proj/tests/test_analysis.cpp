#include <doctest.h>

#include <cmath>

#include "macrorep/analysis.hpp"
#include "macrorep/spincat.hpp"
#include "support/oracles.hpp"

using namespace macrorep;

namespace {

BipartiteState random_state(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  CMatrix a(n + 1, n + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) a(i, j) = Complex(g(rng), g(rng));
  return BipartiteState(EnsembleDim(n), a).normalized();
}

DensityMatrix diag_density(std::vector<double> d) {
  CMatrix m = CMatrix::Zero(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return DensityMatrix(EnsembleDim(static_cast<int>(d.size()) - 1), m);
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("DensityMatrix validation") {
  CMatrix bad = CMatrix::Identity(2, 2) * 0.5;
  bad(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix(EnsembleDim(1), bad), DomainError);
  CHECK_THROWS_AS(DensityMatrix(EnsembleDim(1), CMatrix::Identity(2, 2)), DomainError);
  CHECK_THROWS_AS(DensityMatrix(EnsembleDim(2), CMatrix::Identity(2, 2) * 0.5), DomainError);
}

TEST_CASE("reduced density of a product state is a rank-1 projector") {
  const EnsembleDim dim(5);
  const CVector a = equatorial_coherent(dim, 0.3).amps();
  const CVector b = equatorial_coherent(dim, 1.9).amps();
  const BipartiteState s(dim, a * b.transpose());
  const auto rho = reduced_density(s, Keep::first);
  CHECK((rho.entries() - a * a.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
  const auto spec = hermitian_eigenvalues(rho);
  CHECK(spec.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t i = 1; i < spec.eigenvalues.size(); ++i) CHECK(spec.eigenvalues[i] == 0.0);
  CHECK(von_neumann_entropy(spec) == 0.0);
}

TEST_CASE("reduced density has unit trace") {
  for (int seed = 0; seed < 5; ++seed) {
    const auto s = random_state(6, seed);
    CHECK(std::abs(reduced_density(s, Keep::first).entries().trace() - 1.0) < 1e-12);
    CHECK(std::abs(reduced_density(s, Keep::last).entries().trace() - 1.0) < 1e-12);
  }
  CHECK_THROWS_AS(reduced_density(BipartiteState(EnsembleDim(2), CMatrix::Zero(3, 3)), Keep::first),
                  DomainError);
}

TEST_CASE("L = 2 Bell-cat state has two equal Schmidt weights") {
  const auto s = bell_cat_target(EnsembleDim(20), 2, SiteParity::even);
  const auto spec = hermitian_eigenvalues(reduced_density(s, Keep::first));
  CHECK(std::abs(spec.eigenvalues[0] - 0.5) < 1e-12);
  CHECK(std::abs(spec.eigenvalues[1] - 0.5) < 1e-12);
  for (std::size_t i = 2; i < spec.eigenvalues.size(); ++i) CHECK(std::abs(spec.eigenvalues[i]) < 1e-12);
}

TEST_CASE("simple spectra") {
  const int n = 7;
  const auto uniform = hermitian_eigenvalues(
      DensityMatrix(EnsembleDim(n), CMatrix::Identity(n + 1, n + 1) / double(n + 1)));
  for (double v : uniform.eigenvalues) CHECK(std::abs(v - 1.0 / (n + 1)) < 1e-15);
  CHECK(std::abs(von_neumann_entropy(uniform) - 3.0) < 1e-12);

  const auto two = hermitian_eigenvalues(diag_density({0.3, 0.7}));
  CHECK(two.eigenvalues[0] == doctest::Approx(0.7));
  CHECK(two.eigenvalues[1] == doctest::Approx(0.3));
  CHECK(von_neumann_entropy(Spectrum{{0.5, 0.5}}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(von_neumann_entropy(Spectrum{{1.0, 0.0, 0.0}}) == 0.0);
}

TEST_CASE("negative eigenvalue window") {
  const auto tiny = hermitian_eigenvalues(diag_density({1.0 + 1e-12, -1e-12}));
  CHECK(tiny.eigenvalues[1] == 0.0);
  CHECK(tiny.eigenvalues[0] == 1.0);
  CHECK_THROWS_AS(hermitian_eigenvalues(diag_density({1.0 + 1e-9, -1e-9})), DomainError);
}

TEST_CASE("Jacobi against the characteristic polynomial at N = 3") {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
    const CMatrix a = oracle::random_hermitian(4, seed);
    const auto es = hermitian_eigensystem(a);
    const auto roots = oracle::charpoly_eigenvalues(a);
    REQUIRE(roots.size() == 4);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(es.values[i] - roots[i]) < 1e-9);
  }
}

TEST_CASE("Jacobi moment identities and eigenvectors at N = 20") {
  for (std::uint64_t seed : {5u, 6u}) {
    const CMatrix a = oracle::random_hermitian(21, seed);
    const auto es = hermitian_eigensystem(a);
    double sum = 0.0, sq = 0.0;
    for (double v : es.values) {
      sum += v;
      sq += v * v;
    }
    CHECK(std::abs(sum - a.trace().real()) < 1e-9);
    CHECK(std::abs(sq - a.squaredNorm()) < 1e-9);
    for (std::size_t i = 1; i < es.values.size(); ++i) CHECK(es.values[i - 1] >= es.values[i]);
    for (int i = 0; i < 21; ++i) {
      CHECK((a * es.vectors.col(i) - es.values[i] * es.vectors.col(i)).norm() < 1e-9);
    }
    CHECK((es.vectors.adjoint() * es.vectors - CMatrix::Identity(21, 21)).norm() < 1e-10);
    CHECK(es.sweeps <= 100);
  }
}

TEST_CASE("Jacobi agrees with Eigen's solver") {
  const CMatrix a = oracle::random_hermitian(30, 9);
  const auto es = hermitian_eigensystem(a);
  Eigen::SelfAdjointEigenSolver<CMatrix> ref(a);
  for (int i = 0; i < 30; ++i) CHECK(std::abs(es.values[i] - ref.eigenvalues()(29 - i)) < 1e-10);
}

TEST_CASE("Jacobi rejects non-Hermitian input") {
  CMatrix a = oracle::random_hermitian(3, 1);
  a(0, 1) += 0.01;
  CHECK_THROWS_AS(hermitian_eigensystem(a), DomainError);
  CHECK_THROWS_AS(hermitian_eigensystem(CMatrix::Zero(2, 3)), DomainError);
}

TEST_CASE("entanglement entropy against an explicit partial trace") {
  for (int seed = 0; seed < 4; ++seed) {
    const auto s = random_state(8, 100 + seed);
    CHECK(std::abs(entanglement_entropy(s) - oracle::brute_entropy(s.amps())) < 1e-10);
  }
  const ChainSpec spec(5, EnsembleDim(12), 1.4, 0.2);
  const auto s = build_projected_state(spec, OutcomeVector({3, 9, 6}));
  CHECK(std::abs(entanglement_entropy(s) - oracle::brute_entropy(s.amps())) < 1e-10);
}

TEST_CASE("fidelity") {
  const auto s = random_state(4, 7);
  CHECK(fidelity(s, s) == doctest::Approx(1.0).epsilon(1e-14));
  CMatrix a = CMatrix::Zero(3, 3), b = CMatrix::Zero(3, 3);
  a(0, 0) = 1.0;
  b(1, 2) = 1.0;
  CHECK(fidelity(BipartiteState(EnsembleDim(2), a), BipartiteState(EnsembleDim(2), b)) == 0.0);
  CHECK_THROWS_AS(fidelity(BipartiteState(EnsembleDim(2), a), BipartiteState(EnsembleDim(2), CMatrix::Zero(3, 3))),
                  DomainError);
  CHECK_THROWS_AS(fidelity(s, random_state(3, 1)), DomainError);
}

TEST_CASE("engine state at t = 2pi/3 matches the two-site state") {
  const EnsembleDim dim(20);
  const ChainEngine engine(dim);
  for (int m : {4, 6}) {
    const ChainSpec spec(m, dim, kTwoPi / 3, 0.0);
    CHECK(fidelity(engine.project(spec, OutcomeVector::all_max(spec)), target_m2(dim, spec.time)) >= 1.0 - 1e-6);
  }
}

TEST_CASE("two-site target entropies") {
  const EnsembleDim dim(20);
  CHECK(entanglement_entropy(target_m2(dim, 0.0)) == 0.0);
  CHECK(std::abs(entanglement_entropy(target_m2(dim, kPi)) - 1.0) < 1e-10);
  CHECK(std::abs(entanglement_entropy(target_m2(dim, kTwoPi / 3)) - std::log2(3.0)) < 1e-4);
}

TEST_CASE("three-site target") {
  const EnsembleDim dim(20);
  const auto s = target_m3(dim, kPi);
  CHECK(std::abs(s.norm_sq() - 1.0) < 1e-12);
  CHECK(fidelity(s, shifted_cat_target(dim, 2, 0)) >= 1.0 - 1e-10);
  const auto r = target_m3(dim, 1.234);
  CHECK((r.amps().cwiseAbs() - r.amps().transpose().cwiseAbs()).maxCoeff() < 1e-14);
  CHECK(std::abs(entanglement_entropy(r) - oracle::brute_entropy(r.amps().transpose())) < 1e-10);
  CHECK(fidelity(parity_target(dim, 0.5, 7), target_m3(dim, 0.5)) == doctest::Approx(1.0));
  CHECK(fidelity(parity_target(dim, 0.5, 6), target_m2(dim, 0.5)) == doctest::Approx(1.0));
}

}  // TEST_SUITE

namespace {

// Odometer over the odd-site indices k_1, k_3, ..., k_last.
template <class Fn>
void for_each_odd_indices(int count, int n, Fn fn) {
  std::vector<int> k(count, 0);
  while (true) {
    fn(k);
    int pos = count - 1;
    while (pos >= 0 && ++k[pos] > n) k[pos--] = 0;
    if (pos < 0) return;
  }
}

// prod_{j=2}^{M-1} Omega_{q_j}^{(j)} with odd-site k's in `odd` (k_1, k_3, ...)
// and the site after the last even intermediate in `after`.
Complex omega_product(const ChainSpec& spec, const std::vector<int>& q, const std::vector<int>& odd) {
  const int n = spec.dim.n_atoms();
  Complex prod = 1.0;
  for (int j = 2; j <= spec.m_sites - 1; ++j) {
    const int qj = q[j - 2];
    if (j % 2 == 0) {
      const int before = odd[(j - 2) / 2];
      const int after = odd[j / 2];
      prod *= xnumber_overlap_coherent(spec.dim, qj, (before - after) * spec.time + spec.offset);
    } else {
      const int kj = odd[(j - 1) / 2];
      prod *= std::polar(std::exp(0.5 * log_binomial(n, kj)), kj * spec.offset) *
              xnumber_overlap_fock(spec.dim, qj, kj);
    }
  }
  return prod;
}

}  // namespace

TEST_CASE("explicit fidelity sum for even chains") {
  const int n = 4;
  for (int m : {4, 6}) {
    for (double t : {kPi, 2.0, kTwoPi / 3}) {
      const ChainSpec spec(m, EnsembleDim(n), t, 0.0);
      const OutcomeVector q = OutcomeVector::all_max(spec);
      const auto state = build_projected_state(spec, q);
      Complex sum = 0.0;
      for_each_odd_indices(m / 2, n, [&](const std::vector<int>& odd) {
        const Complex tail = std::pow((std::polar(1.0, (odd.back() - odd.front()) * t) + 1.0) / 2.0, n);
        sum += std::exp(log_binomial(n, odd.front())) * omega_product(spec, q.values(), odd) * tail;
      });
      const double explicit_f = std::norm(sum) / (std::pow(2.0, n * (m + 2) / 2.0) * state.norm_sq());
      CHECK(std::abs(explicit_f - fidelity(state, target_m2(spec.dim, t))) < 1e-12);
    }
  }
}

TEST_CASE("explicit fidelity sum for odd chains") {
  const int n = 4;
  for (int m : {3, 5}) {
    for (double t : {kPi, 2.0}) {
      const ChainSpec spec(m, EnsembleDim(n), t, 0.0);
      const OutcomeVector q = OutcomeVector::all_max(spec);
      const auto state = build_projected_state(spec, q);
      Complex sum = 0.0;
      double ideal_norm = 0.0;
      for_each_odd_indices((m + 1) / 2, n, [&](const std::vector<int>& odd) {
        const int k1 = odd.front(), km = odd.back();
        const Complex ideal = xnumber_overlap_coherent(spec.dim, n, (k1 - km) * t);
        sum += std::exp(log_binomial(n, k1) + log_binomial(n, km)) * std::conj(ideal) *
               omega_product(spec, q.values(), odd);
      });
      for (int k1 = 0; k1 <= n; ++k1)
        for (int k3 = 0; k3 <= n; ++k3)
          ideal_norm += std::exp(log_binomial(n, k1) + log_binomial(n, k3)) *
                        std::norm(xnumber_overlap_coherent(spec.dim, n, (k1 - k3) * t));
      const double explicit_f =
          std::norm(sum) / (std::pow(2.0, n * (m + 1) / 2.0) * state.norm_sq() * ideal_norm);
      CHECK(std::abs(explicit_f - fidelity(state, target_m3(spec.dim, t))) < 1e-12);
    }
  }
}

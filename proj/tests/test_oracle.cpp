#include <doctest.h>

#include <cmath>

#include "macrorep/analysis.hpp"
#include "macrorep/oracle.hpp"

using namespace macrorep;

TEST_SUITE("oracle") {

TEST_CASE("t = 0 gives a product of equatorial states") {
  const ChainSpec spec(3, EnsembleDim(2), 0.0);
  const auto full = oracle_full_state(spec);
  const auto w = equatorial_weights(spec.dim);
  int idx = 0;
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b)
      for (int c = 0; c <= 2; ++c) CHECK(std::abs(full.amps()(idx++) - w[a] * w[b] * w[c]) < 1e-15);
}

TEST_CASE("full state is normalized") {
  const auto full = oracle_full_state(ChainSpec(4, EnsembleDim(4), 2.2, 0.0));
  CHECK(std::abs(full.amps().squaredNorm() - 1.0) < 1e-12);
}

TEST_CASE("two-site full state") {
  const int n = 3;
  const double t = 1.7;
  const auto full = oracle_full_state(ChainSpec(2, EnsembleDim(n), t));
  for (int a = 0; a <= n; ++a) {
    for (int b = 0; b <= n; ++b) {
      const double mag = std::exp(0.5 * (log_binomial(n, a) + log_binomial(n, b))) / std::pow(2.0, n);
      CHECK(std::abs(full.amps()(a * (n + 1) + b) - std::polar(mag, t * a * b)) < 1e-15);
    }
  }
}

TEST_CASE("projection at t = pi reproduces the two-site state") {
  const ChainSpec spec(4, EnsembleDim(2), kPi, 0.0);
  const auto projected = oracle_project(oracle_full_state(spec), spec, OutcomeVector::all_max(spec));
  CHECK(fidelity(projected, target_m2(spec.dim, kPi)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("oracle completeness") {
  const ChainSpec spec(4, EnsembleDim(3), 0.6, 1.2);
  const auto full = oracle_full_state(spec);
  double total = 0.0;
  for (const auto& q : enumerate_outcomes(spec)) total += oracle_project(full, spec, q).norm_sq();
  CHECK(std::abs(total - 1.0) < 1e-10);
}

TEST_CASE("enumeration is lexicographic and complete") {
  const auto all = enumerate_outcomes(ChainSpec(4, EnsembleDim(2), 0.0));
  REQUIRE(all.size() == 9);
  CHECK(all.front().values() == std::vector<int>{0, 0});
  CHECK(all[1].values() == std::vector<int>{0, 1});
  CHECK(all.back().values() == std::vector<int>{2, 2});
  CHECK(enumerate_outcomes(ChainSpec(2, EnsembleDim(2), 0.0)).size() == 1);
}

TEST_CASE("oversize chains are refused") {
  CHECK_THROWS_AS(oracle_full_state(ChainSpec(6, EnsembleDim(20), 1.0)), DomainError);
}

}  // TEST_SUITE

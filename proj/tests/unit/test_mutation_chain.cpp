#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "oracle.hpp"
#include "wordwait/markov_core.hpp"
#include "wordwait/mutation_chain.hpp"
#include "wordwait/rng.hpp"

using namespace wordwait;

namespace {

// h from the closed-form differences h(W-k) - h(W-k-1) = C / (3^k C(W-1, k)).
std::vector<long double> closed_form_h(int W) {
  std::vector<long double> d(static_cast<std::size_t>(W));
  long double total = 0.0L;
  for (int k = 0; k < W; ++k) {
    d[static_cast<std::size_t>(k)] = 1.0L / (std::pow(3.0L, k) * oracle::binomial(W - 1, k));
    total += d[static_cast<std::size_t>(k)];
  }
  std::vector<long double> h(static_cast<std::size_t>(W) + 1, 0.0L);
  for (int x = 1; x <= W; ++x) h[x] = h[x - 1] + d[static_cast<std::size_t>(W - x)] / total;
  return h;
}

int step(const BirthDeathChain& c, int x, ReplicationStream& rng) {
  const double u = rng.uniform();
  if (u < c.up[x]) return x + 1;
  if (u < c.up[x] + c.down[x]) return x - 1;
  return x;
}

}  // namespace

TEST_CASE("match chain transition probabilities") {
  const auto c = build_match_chain(6);
  CHECK(c.down[3] == doctest::Approx(0.5));
  CHECK(c.up[3] == doctest::Approx(1.0 / 6.0));
  CHECK(c.stay[3] == doctest::Approx(1.0 / 3.0));
  for (int x = 0; x <= 6; ++x) {
    CHECK(c.down[x] == doctest::Approx(x / 6.0));
    CHECK(c.up[x] == doctest::Approx((6.0 - x) / 18.0));
    CHECK(c.stay[x] == doctest::Approx(2.0 * (6.0 - x) / 18.0));
  }
  CHECK_THROWS_AS(build_match_chain(0), std::invalid_argument);
  CHECK_THROWS_AS(build_match_chain(-2), std::invalid_argument);
}

TEST_CASE("stationary law is Binomial(W, 1/4)") {
  for (int W : {1, 6, 8}) {
    const auto pi = match_stationary(W);
    const auto db = stationary_distribution(build_match_chain(W));
    for (int x = 0; x <= W; ++x) {
      const double binom = oracle::binomial(W, x) * std::pow(0.25, x) * std::pow(0.75, W - x);
      CHECK(pi[x] == doctest::Approx(binom).epsilon(1e-14));
      CHECK(db[x] == doctest::Approx(binom).epsilon(1e-12));
    }
  }
  CHECK(match_stationary(6)[6] == doctest::Approx(std::pow(4.0, -6)));
}

TEST_CASE("hitting probabilities match the closed form and the published table") {
  for (int W : {2, 5, 6, 8, 12}) {
    const auto h = match_hitting_probabilities(W);
    const auto ref = closed_form_h(W);
    for (int x = 0; x <= W; ++x) CHECK(h[x] == doctest::Approx(double(ref[x])).epsilon(1e-13));
  }
  const std::vector<double> w6 = {0.003782, 0.006051, 0.009455, 0.01966, 0.08093};
  const std::vector<double> u6 = {1e-6, 1e-6, 1e-6, 1e-5, 1e-5};
  const auto h6 = match_hitting_probabilities(6);
  for (std::size_t i = 0; i < w6.size(); ++i) CHECK(oracle::printed(h6[i + 1], w6[i], u6[i]));

  const std::vector<double> w8 = {0.0004334, 0.0006190, 0.0008047, 0.001139,
                                  0.002141,  0.007156,  0.05228};
  const std::vector<double> u8 = {1e-7, 1e-7, 1e-7, 1e-6, 1e-6, 1e-6, 1e-5};
  const auto h8 = match_hitting_probabilities(8);
  // x = 1 is printed as 0.0004334 although the exact value is 0.00043334.
  CHECK(std::abs(h8[1] - w8[0]) <= 1.0 * u8[0]);
  CHECK(h8[1] == doctest::Approx(0.00043334).epsilon(1e-5));
  for (std::size_t i = 1; i < w8.size(); ++i) CHECK(oracle::printed(h8[i + 1], w8[i], u8[i]));
}

TEST_CASE("chain summary for the published word lengths") {
  const auto s6 = chain_summary(6);
  CHECK(s6.W == 6);
  CHECK(s6.a == doctest::Approx(0.08093).epsilon(1e-4));
  CHECK(s6.mean_stationary == doctest::Approx(4420.575).epsilon(1e-9));
  CHECK(s6.mean_from_zero == doctest::Approx(4431.6).epsilon(1e-9));
  CHECK(s6.clump_mean_formula == doctest::Approx(4456.7177).epsilon(1e-7));
  CHECK(s6.relaxation_time == 4.5);

  const auto s8 = chain_summary(8);
  CHECK(s8.a == doctest::Approx(0.05228).epsilon(1e-4));
  CHECK(std::abs(s8.mean_stationary - 69088) <= 0.5);
  CHECK(std::abs(s8.mean_from_zero - 69104) <= 0.5);
  CHECK(std::abs(s8.clump_mean_formula - 69152) <= 0.5);

  for (const auto& s : {s6, s8}) {
    CHECK(s.a > 0.0);
    CHECK(s.a < 1.0);
    CHECK(s.mean_stationary <= s.mean_from_zero);
    CHECK(s.mean_stationary >= std::pow(4.0, s.W));
    CHECK(std::abs(s.mean_stationary - s.clump_mean_formula) / s.clump_mean_formula < 0.01);
  }
}

TEST_CASE("one-letter word") {
  const auto s = chain_summary(1);
  CHECK(s.a == 0.0);
  CHECK(s.mean_from_zero == doctest::Approx(3.0));
  CHECK(s.mean_stationary == doctest::Approx(0.75 * 3.0));
}

TEST_CASE("relaxation time and error bound") {
  CHECK(relaxation_time(8) == 6.0);
  CHECK(exponential_error_bound(6) < 0.0011);
  CHECK(exponential_error_bound(8) < 0.0001);
  CHECK(exponential_error_bound(8) ==
        doctest::Approx(6.0 / chain_summary(8).mean_stationary));
  // x - W/4 is an eigenvector with eigenvalue 1 - 4/(3W), the spectral gap.
  for (int W : {3, 6, 8}) {
    const auto c = build_match_chain(W);
    const double lambda = 1.0 - 4.0 / (3.0 * W);
    for (int x = 0; x <= W; ++x) {
      auto f = [W](int y) { return y - W / 4.0; };
      double pf = c.stay[x] * f(x);
      if (x < W) pf += c.up[x] * f(x + 1);
      if (x > 0) pf += c.down[x] * f(x - 1);
      CHECK(pf == doctest::Approx(lambda * f(x)));
    }
    CHECK(relaxation_time(W) == doctest::Approx(1.0 / (1.0 - lambda)));
  }
}

TEST_CASE("return probability agrees with simulation") {
  const int W = 6;
  const auto c = build_match_chain(W);
  const std::size_t trials = 1'000'000;
  std::size_t returns = 0;
  ReplicationStream rng(2024, 0);
  for (std::size_t t = 0; t < trials; ++t) {
    int x = step(c, W, rng);
    while (x != 0 && x != W) x = step(c, x, rng);
    returns += x == W;
  }
  const double a = chain_summary(W).a;
  const double p = double(returns) / trials;
  const double sigma = std::sqrt(a * (1 - a) / trials);
  CHECK(std::abs(p - a) < 3 * sigma);
}

TEST_CASE("stationary mean hitting time agrees with simulation") {
  const int W = 6;
  const auto c = build_match_chain(W);
  const auto pi = match_stationary(W);
  const std::size_t trials = 100'000;
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    ReplicationStream rng(77, t);
    int x = 0;
    double u = rng.uniform(), acc = pi[0];
    while (u >= acc && x < W) acc += pi[++x];
    double n = 0;
    while (x != W) {
      x = step(c, x, rng);
      ++n;
    }
    sum += n;
    sum_sq += n * n;
  }
  const double mean = sum / trials;
  const double sem = std::sqrt((sum_sq / trials - mean * mean) / trials);
  CHECK(std::abs(mean - chain_summary(W).mean_stationary) < 3 * sem);
}

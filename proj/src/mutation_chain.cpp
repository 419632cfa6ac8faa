#include "wordwait/mutation_chain.hpp"

#include <cmath>
#include <stdexcept>

namespace wordwait {

namespace {

void require_length(int W) {
  if (W < 1) throw std::invalid_argument("word length must be at least 1");
}

}  // namespace

BirthDeathChain build_match_chain(int W) {
  require_length(W);
  const double w = W;
  std::vector<double> up(W + 1), down(W + 1);
  for (int x = 0; x <= W; ++x) {
    up[x] = (w - x) / (3.0 * w);
    down[x] = x / w;
  }
  return BirthDeathChain::from_rates(std::move(up), std::move(down));
}

std::vector<double> match_stationary(int W) {
  require_length(W);
  std::vector<double> pi(W + 1);
  double binom = 1.0;
  for (int x = 0; x <= W; ++x) {
    pi[x] = binom * std::pow(0.25, x) * std::pow(0.75, W - x);
    binom = binom * (W - x) / (x + 1);
  }
  return pi;
}

std::vector<double> match_hitting_probabilities(int W) {
  require_length(W);
  return hitting_probability(build_match_chain(W), 0, W);
}

double relaxation_time(int W) {
  require_length(W);
  return 0.75 * W;
}

MutationChainSummary chain_summary(int W) {
  require_length(W);
  const auto chain = build_match_chain(W);
  const auto h = match_hitting_probabilities(W);
  const auto u = expected_hitting_time(chain, W);
  const auto pi = match_stationary(W);

  MutationChainSummary s;
  s.W = W;
  s.a = h[W - 1];
  s.mean_from_zero = u[0];
  for (int x = 0; x <= W; ++x) s.mean_stationary += pi[x] * u[x];
  s.clump_mean_formula = std::pow(4.0, W) / (1.0 - s.a);
  s.relaxation_time = relaxation_time(W);
  return s;
}

double exponential_error_bound(int W) {
  const auto s = chain_summary(W);
  return s.relaxation_time / s.mean_stationary;
}

}  // namespace wordwait

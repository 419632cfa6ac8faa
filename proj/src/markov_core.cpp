#include "wordwait/markov_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace wordwait {

namespace {

constexpr double kRowTolerance = 1e-12;

void require_state(const BirthDeathChain& chain, std::size_t x,
                   const char* what) {
  if (x >= chain.size()) {
    throw std::invalid_argument(std::string(what) + " state " +
                                std::to_string(x) + " outside 0.." +
                                std::to_string(chain.max_state()));
  }
}

}  // namespace

BirthDeathChain BirthDeathChain::from_rates(std::vector<double> up,
                                            std::vector<double> down) {
  if (up.size() != down.size() || up.empty()) {
    throw std::invalid_argument("up and down must be non-empty and equal size");
  }
  BirthDeathChain chain;
  chain.stay.resize(up.size());
  for (std::size_t x = 0; x < up.size(); ++x) {
    chain.stay[x] = 1.0 - up[x] - down[x];
    // Snap rounding residue so that rows sum to one exactly.
    if (std::abs(chain.stay[x]) < kRowTolerance) chain.stay[x] = 0.0;
  }
  chain.up = std::move(up);
  chain.down = std::move(down);
  chain.validate();
  return chain;
}

void BirthDeathChain::validate() const {
  if (up.empty() || up.size() != down.size() || up.size() != stay.size()) {
    throw std::invalid_argument("chain vectors must be non-empty and equal size");
  }
  for (std::size_t x = 0; x < up.size(); ++x) {
    for (double p : {up[x], down[x], stay[x]}) {
      if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("transition probability outside [0,1] at state " +
                                    std::to_string(x));
      }
    }
    if (std::abs(up[x] + down[x] + stay[x] - 1.0) > kRowTolerance) {
      throw std::invalid_argument("row " + std::to_string(x) + " does not sum to 1");
    }
  }
  if (down.front() != 0.0 || up.back() != 0.0) {
    throw std::invalid_argument("chain steps outside its state space");
  }
}

std::vector<double> hitting_probability(const BirthDeathChain& chain,
                                        std::size_t lower, std::size_t upper) {
  require_state(chain, upper, "upper");
  if (lower >= upper) throw std::invalid_argument("need lower < upper");

  for (std::size_t x = lower + 1; x < upper; ++x) {
    if (chain.up[x] <= 0.0 || chain.down[x] <= 0.0) {
      throw std::domain_error("not irreducible on interval (state " +
                              std::to_string(x) + ")");
    }
  }

  // diff[x] = h(x+1) - h(x); down[x] diff[x-1] = up[x] diff[x].
  std::vector<double> diff(upper - lower);
  diff.back() = 1.0;
  for (std::size_t x = upper - 1; x > lower; --x) {
    diff[x - 1 - lower] = chain.up[x] / chain.down[x] * diff[x - lower];
  }
  double total = 0.0;
  for (double d : diff) total += d;

  std::vector<double> h(chain.size(), 0.0);
  double acc = 0.0;
  for (std::size_t x = lower + 1; x < upper; ++x) {
    acc += diff[x - 1 - lower];
    h[x] = acc / total;
  }
  for (std::size_t x = upper; x < chain.size(); ++x) h[x] = 1.0;
  return h;
}

std::vector<double> expected_hitting_time(const BirthDeathChain& chain,
                                          std::size_t target) {
  require_state(chain, target, "target");
  const std::size_t n = chain.max_state();
  std::vector<double> u(chain.size(), 0.0);

  // Below the target: delta(x) = u(x) - u(x+1).
  std::vector<double> delta(target);
  double prev = 0.0;
  for (std::size_t x = 0; x < target; ++x) {
    if (chain.up[x] <= 0.0) {
      throw std::domain_error("target " + std::to_string(target) +
                              " unreachable from state " + std::to_string(x));
    }
    delta[x] = (1.0 + chain.down[x] * prev) / chain.up[x];
    prev = delta[x];
  }
  for (std::size_t x = target; x-- > 0;) u[x] = u[x + 1] + delta[x];

  // Above the target: eps(x) = u(x) - u(x-1).
  std::vector<double> eps(chain.size(), 0.0);
  prev = 0.0;
  for (std::size_t x = n; x > target; --x) {
    if (chain.down[x] <= 0.0) {
      throw std::domain_error("target " + std::to_string(target) +
                              " unreachable from state " + std::to_string(x));
    }
    eps[x] = (1.0 + chain.up[x] * prev) / chain.down[x];
    prev = eps[x];
  }
  for (std::size_t x = target + 1; x <= n; ++x) u[x] = u[x - 1] + eps[x];
  return u;
}

HittingProfile hitting_profile(const BirthDeathChain& chain, std::size_t lower,
                               std::size_t upper) {
  HittingProfile profile;
  profile.lower = lower;
  profile.upper = upper;
  profile.h = hitting_probability(chain, lower, upper);
  profile.u = expected_hitting_time(chain, upper);
  return profile;
}

double greens_function(const BirthDeathChain& chain, std::size_t from,
                       std::size_t at, std::size_t stop) {
  require_state(chain, from, "from");
  require_state(chain, at, "at");
  require_state(chain, stop, "stop");
  if (from == stop || at == stop) return 0.0;

  double reach = 1.0;
  double escape = 0.0;
  if (from < stop && at < stop) {
    // Leaving `at` for good means stepping up and then reaching stop first.
    const double beyond =
        at + 1 == stop ? 1.0 : hitting_probability(chain, at, stop)[at + 1];
    escape = chain.up[at] * beyond;
    if (from > at) reach = 1.0 - hitting_probability(chain, at, stop)[from];
  } else if (from > stop && at > stop) {
    const double beyond =
        at - 1 == stop ? 1.0 : 1.0 - hitting_probability(chain, stop, at)[at - 1];
    escape = chain.down[at] * beyond;
    if (from < at) reach = hitting_probability(chain, stop, at)[from];
  } else {
    throw std::domain_error("stop state separates from and at");
  }
  if (escape <= 0.0) throw std::domain_error("stop state is never reached");
  return reach / escape;
}

BirthDeathChain condition_on_hitting(const BirthDeathChain& chain,
                                     std::size_t target, std::size_t avoid) {
  require_state(chain, target, "target");
  require_state(chain, avoid, "avoid");
  if (target == avoid) throw std::invalid_argument("target equals avoid");

  std::vector<double> h;
  if (target > avoid) {
    h = hitting_probability(chain, avoid, target);
  } else {
    h = hitting_probability(chain, target, avoid);
    for (double& v : h) v = 1.0 - v;
  }

  const std::size_t n = chain.max_state();
  BirthDeathChain q;
  q.up.assign(chain.size(), 0.0);
  q.down.assign(chain.size(), 0.0);
  q.stay.assign(chain.size(), 1.0);
  for (std::size_t x = 0; x <= n; ++x) {
    const double h_up = x < n ? h[x + 1] : 0.0;
    const double h_down = x > 0 ? h[x - 1] : 0.0;
    if (x == target) continue;
    if (x == avoid) {
      const double w_up = chain.up[x] * h_up;
      const double w_down = chain.down[x] * h_down;
      const double total = w_up + w_down;
      if (total <= 0.0) throw std::domain_error("target unreachable from avoid state");
      q.up[x] = w_up / total;
      q.down[x] = w_down / total;
      q.stay[x] = 0.0;
      continue;
    }
    if (h[x] == 0.0) {
      const bool interior = (x > std::min(target, avoid)) && (x < std::max(target, avoid));
      if (interior) throw std::domain_error("h vanishes at interior state " + std::to_string(x));
      continue;  // beyond the avoided state; unreachable
    }
    q.up[x] = chain.up[x] * h_up / h[x];
    q.down[x] = chain.down[x] * h_down / h[x];
    q.stay[x] = chain.stay[x];
  }
  return q;
}

std::vector<double> stationary_distribution(const BirthDeathChain& chain) {
  std::vector<double> pi(chain.size(), 0.0);
  pi[0] = 1.0;
  for (std::size_t x = 0; x < chain.max_state(); ++x) {
    if (chain.up[x] <= 0.0 || chain.down[x + 1] <= 0.0) {
      throw std::domain_error("chain is not irreducible");
    }
    pi[x + 1] = pi[x] * chain.up[x] / chain.down[x + 1];
  }
  double total = 0.0;
  for (double p : pi) total += p;
  for (double& p : pi) p /= total;
  return pi;
}

double kac_return_time(std::span<const double> stationary, std::size_t x) {
  if (x >= stationary.size()) throw std::invalid_argument("state out of range");
  if (stationary[x] <= 0.0) throw std::domain_error("stationary mass is zero");
  return 1.0 / stationary[x];
}

double mean_return_time(const BirthDeathChain& chain, std::size_t x) {
  const auto u = expected_hitting_time(chain, x);
  double result = 1.0;
  if (x < chain.max_state()) result += chain.up[x] * u[x + 1];
  if (x > 0) result += chain.down[x] * u[x - 1];
  return result;
}

}  // namespace wordwait

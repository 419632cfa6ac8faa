#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace wordwait {

/// Nearest-neighbour transition kernel on states 0..n.
///
/// Row x moves to x+1 with probability up[x], to x-1 with probability
/// down[x] and stays put with probability stay[x]. A state with
/// up = down = 0 is absorbing.
struct BirthDeathChain {
  std::vector<double> up;
  std::vector<double> down;
  std::vector<double> stay;

  /// Builds a chain from up/down probabilities; stay is the complement.
  static BirthDeathChain from_rates(std::vector<double> up,
                                    std::vector<double> down);

  std::size_t size() const { return up.size(); }
  std::size_t max_state() const { return up.size() - 1; }

  /// Throws std::invalid_argument if a row is not a probability vector or
  /// the chain tries to step outside 0..n.
  void validate() const;
};

/// Harmonic function h and expected steps u for one (lower, upper) pair.
struct HittingProfile {
  std::size_t lower = 0;
  std::size_t upper = 0;
  std::vector<double> h;  // P_x(T_upper < T_lower)
  std::vector<double> u;  // E_x T_upper
};

/// P_x(T_upper < T_lower) for every state x.
///
/// Built from the telescoping differences h(x) - h(x-1), seeded with a
/// constant at the upper end and normalised so that h(lower) = 0 and
/// h(upper) = 1. States below `lower` get 0, states above `upper` get 1.
/// Throws std::domain_error if some interior state cannot move both ways.
std::vector<double> hitting_probability(const BirthDeathChain& chain,
                                        std::size_t lower, std::size_t upper);

/// E_x T_target for every state x, in steps.
///
/// Below the target the differences u(x) - u(x+1) are iterated upward from
/// state 0 starting at 1/up[0]; above it the mirror recursion runs down
/// from the top state. Throws std::domain_error if the target cannot be
/// reached from some state.
std::vector<double> expected_hitting_time(const BirthDeathChain& chain,
                                          std::size_t target);

HittingProfile hitting_profile(const BirthDeathChain& chain, std::size_t lower,
                               std::size_t upper);

/// Green's function G_stop(from, at): expected number of steps spent at
/// `at` starting from `from`, before the chain first hits `stop`.
double greens_function(const BirthDeathChain& chain, std::size_t from,
                       std::size_t at, std::size_t stop);

/// Doob h-transform: the chain conditioned to reach `target` before
/// `avoid`.
///
/// Interior rows become q(x, y) = p(x, y) h(y) / h(x). The `avoid` row is
/// the law of the first step of an excursion that reaches the target before
/// returning, so the chain may be started there. The target and every
/// state on the far side of `avoid` become absorbing.
BirthDeathChain condition_on_hitting(const BirthDeathChain& chain,
                                     std::size_t target, std::size_t avoid);

/// Stationary law from detailed balance. Requires an irreducible chain.
std::vector<double> stationary_distribution(const BirthDeathChain& chain);

/// Kac's formula E_x T_x^+ = 1 / pi(x).
double kac_return_time(std::span<const double> stationary, std::size_t x);

/// E_x T_x^+ by first-step analysis on the chain itself.
double mean_return_time(const BirthDeathChain& chain, std::size_t x);

}  // namespace wordwait

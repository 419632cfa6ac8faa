#pragma once

#include <vector>

#include "wordwait/markov_core.hpp"

namespace wordwait {

/// Match-count chain for a W-letter word under uniform single-letter
/// mutation: from x matches, down with x/W, up with (W-x)/(3W), otherwise
/// the mutation swaps one wrong letter for another.
BirthDeathChain build_match_chain(int W);

/// Binomial(W, 1/4), the stationary law of the match-count chain.
std::vector<double> match_stationary(int W);

/// h(x) = P_x(T_W < T_0) on the match-count chain, x = 0..W.
std::vector<double> match_hitting_probabilities(int W);

struct MutationChainSummary {
  int W = 0;
  double a = 0.0;                   // P_W(T_W^+ < T_0) = h(W-1)
  double mean_from_zero = 0.0;      // E_0 T_W
  double mean_stationary = 0.0;     // E_pi T_W
  double clump_mean_formula = 0.0;  // 4^W / (1 - a)
  double relaxation_time = 0.0;     // 3W/4 for the per-step chain
};

MutationChainSummary chain_summary(int W);

/// tau_2 / E_pi T_W, the uniform distance between P_pi(T_W > t) and the
/// exponential with the same mean.
double exponential_error_bound(int W);

/// 3W/4: inverse spectral gap of the chain that changes one of W letters
/// per step.
double relaxation_time(int W);

}  // namespace wordwait

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wordwait/dna_word.hpp"
#include "wordwait/sequence_sim.hpp"

namespace wordwait {

/// Parameters shared by the population-level estimates. N counts diploid
/// individuals, so the Moran model has 2N gene copies.
struct PopulationParams {
  double N = 1e4;
  double mu = 1e-8;  // per nucleotide per generation
  int W = 8;
  double L = 1000;
  double generation_years = 25;

  void validate() const;
};

enum class Excursion { kLoss, kFixation };

/// Mutant-birth statistics of one Moran excursion started from a single
/// mutant, conditioned on its outcome. Sampling fields stay zero/empty for
/// exact results.
struct ExcursionStats {
  Excursion condition = Excursion::kLoss;
  double mean_births = 0.0;            // type I + type III events
  double asymptote = 0.0;              // N for loss, 2N^2 for fixation
  std::vector<double> per_state_visits;  // E_1(N_k | condition), k = 0..2N
  std::size_t count = 0;               // simulated excursions in this class
  double births_sem = 0.0;
  std::vector<double> per_state_sem;
};

/// E_1(N_k | condition): jump-chain visits to k before absorption.
double moran_exact_visits(long long N, long long k, Excursion condition);

/// Exact finite-N sums of expected type I and type III events.
ExcursionStats moran_excursion_births(long long N, Excursion condition);

struct MoranSimulation {
  std::size_t replications = 0;
  std::uint64_t seed = 0;
  double fixation_fraction = 0.0;
  ExcursionStats loss;
  ExcursionStats fixation;
};

/// Simulates excursions of the Moran mutant count from `start` copies,
/// drawing type I, II and III events (type IV changes nothing and is
/// skipped), and splits them by outcome.
MoranSimulation moran_excursion_simulate(long long N, std::size_t replications,
                                         std::uint64_t seed, unsigned threads = 0,
                                         long long start = 1);

/// Probability that a double mutation reaches the target word before the
/// next fixation when the population sits two letters away.
double rho(const PopulationParams& params);

/// 2N mu / 9W: expected good double mutations per lost excursion.
double double_mutation_expectation(const PopulationParams& params);

struct TripleMutation {
  double per_interval = 0.0;  // 4 N^3 mu^2 / 9W
  double visits = 0.0;        // E_0 visits to W-3 before W-1
  double total = 0.0;
};

TripleMutation triple_mutation_expectation(const PopulationParams& params);

enum class StoppingForm {
  kPrinted,    // closed form as used for the published 214 / 2300
  kFirstStep,  // full first-step analysis, counting every step from W-2
};

struct StoppingTimeEstimate {
  double rho = 0.0;
  double from_two_away = 0.0;     // E_{W-2} S
  std::vector<double> per_state;  // E_x S, x = 0..W
  double mean_steps = 0.0;        // E_pi S, in fixations
  double generations = 0.0;
  double years = 0.0;
  bool regime_ok = true;          // N^3 mu^2 small enough for the estimate
};

/// Expected number of fixations until the population word is one letter
/// away from the target, or two letters away and a double mutation lands.
StoppingTimeEstimate approx3_expected_time(const PopulationParams& params,
                                           StoppingForm form = StoppingForm::kPrinted,
                                           std::optional<double> rho_override = {});

/// N^3 mu^2 above this is flagged as outside the regime of approx3.
inline constexpr double kTripleMutationRegime = 0.01;

struct SegmentRhos {
  double rho1 = 0.0;  // one mismatch: (1 + 3L/2N)^-1
  double rho2 = 0.0;  // two mismatches: r / (r + 1)
  double r = 0.0;     // 4 N^2 mu / 9L
};

SegmentRhos rho1_rho2(const PopulationParams& params);

struct KilledChainOptions {
  bool stop_on_match_minus_1 = true;
  bool exact_rho1 = false;             // stop with rho1 per window, not 1
  std::optional<double> rho2_override;
  std::uint64_t bin_width = 10;
  std::uint64_t step_cap = kDefaultStepCap;
  unsigned threads = 0;
};

struct KilledChainResult {
  SimResult summary;  // T_D in fixation-chain steps
  double rho1 = 0.0;
  double rho2 = 0.0;
  double conditional_generations = 0.0;  // E(T_D | T_D > 0) / (L mu)
  double conditional_years = 0.0;
};

/// Fixation chain on a circular L-letter segment, killed when a window is
/// within one letter of the word, or by an independent rho2 coin for each
/// window two letters away. Checks run at step 0 and after every step.
KilledChainResult killed_fixation_chain_sim(const DnaWord& word,
                                            const PopulationParams& params,
                                            std::size_t replications, std::uint64_t seed,
                                            const KilledChainOptions& options = {});

/// (base / divisor) * sum_{k>=1} Poisson(m){k} / k.
double mixture_mean_years(double base_years, double poisson_mean, double divisor);

struct CoalescentQuantities {
  double tree_length = 0.0;             // 4N sum_{j<2N} 1/j
  double tree_length_asymptotic = 0.0;  // 4N ln(2N)
  double expected_mutations_W = 0.0;    // W mu 4N ln(2N)
  double expected_mutations_L = 0.0;    // L mu 4N ln(2N)
  double expected_mutations_W_exact = 0.0;
  double expected_mutations_L_exact = 0.0;
  double site_frequency_mean_fraction = 0.0;  // 1 / ln(2N)
};

CoalescentQuantities coalescent_quantities(const PopulationParams& params);

struct AlmostMatchBalance {
  double disruption_rate = 0.0;
  double creation_rate = 0.0;
};

/// Expected match-minus-1 windows disrupted and created by the mutations on
/// the genealogy, given EM1 and EM2 windows in the ancestor.
AlmostMatchBalance lemma1_balance(const PopulationParams& params, double em1, double em2);

/// Same with the number of mutations on the tree for the whole segment given
/// directly.
AlmostMatchBalance lemma1_balance(int W, double L, double mutations_on_tree, double em1,
                                  double em2);

/// Binding probability 1 / (1 + exp(epsilon (r - r0))).
double fermi_binding(double mismatches, double threshold, double epsilon);

/// Rounds to `digits` significant figures.
double round_significant(double value, int digits);

struct HeadlineEstimates {
  double single_match_minus_1_years = 0.0;  // 3 / (2 N mu) generations
  double six_letter_years = 0.0;            // mixture over Poisson(EM1), W = 6
  double no_match_years = 0.0;              // killed chain, W = 8
  double seven_of_eight_years = 0.0;        // mixture over Poisson(EM2) / 2, W = 8
  double em1_six = 0.0;
  double em2_eight = 0.0;
};

/// `killed_conditional_mean` is E(T_D | T_D > 0) from the killed chain in
/// fixation steps; `segment_L` is the segment used for EM1/EM2.
HeadlineEstimates headline_estimates(const PopulationParams& params,
                                     double killed_conditional_mean,
                                     double segment_L = 1024);

}  // namespace wordwait

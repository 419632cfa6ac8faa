#include "wordwait/population.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "wordwait/markov_core.hpp"
#include "wordwait/mutation_chain.hpp"
#include "wordwait/parallel.hpp"
#include "wordwait/word_stats.hpp"

namespace wordwait {

void PopulationParams::validate() const {
  if (!(N >= 1.0)) throw std::invalid_argument("population size N must be >= 1");
  if (!(mu >= 0.0 && mu < 1.0)) throw std::invalid_argument("mu must lie in [0, 1)");
  if (W < 1 || W > kMaxWordLength) throw std::invalid_argument("bad word length");
  if (!(L > 0.0)) throw std::invalid_argument("segment length must be positive");
  if (!(generation_years > 0.0)) throw std::invalid_argument("generation time must be positive");
}

// ---------------------------------------------------------------------------
// Moran excursions

double moran_exact_visits(long long N, long long k, Excursion condition) {
  const long long two_n = 2 * N;
  if (N < 1 || k < 1 || k > two_n - 1) {
    throw std::invalid_argument("state k must lie in 1..2N-1");
  }
  const double n2 = static_cast<double>(two_n);
  const double kd = static_cast<double>(k);
  if (condition == Excursion::kLoss) {
    return 2.0 * (n2 - kd) * (n2 - kd) / (n2 * (n2 - 1.0));
  }
  return 2.0 * kd * (n2 - kd) / n2;
}

ExcursionStats moran_excursion_births(long long N, Excursion condition) {
  if (N < 1) throw std::invalid_argument("population size N must be >= 1");
  const long long two_n = 2 * N;
  const double n2 = static_cast<double>(two_n);

  ExcursionStats stats;
  stats.condition = condition;
  stats.per_state_visits.assign(static_cast<std::size_t>(two_n) + 1, 0.0);
  double type1 = 0.0;
  double type3 = 0.0;
  for (long long k = 1; k < two_n; ++k) {
    const double kd = static_cast<double>(k);
    const double visits = moran_exact_visits(N, k, condition);
    stats.per_state_visits[static_cast<std::size_t>(k)] = visits;
    // Type I events per visit: shifted geometric with mean k / (4N - 2k).
    type1 += visits * kd / (2.0 * n2 - 2.0 * kd);
    if (condition == Excursion::kLoss) {
      const double reach = (n2 - kd) / (kd * (n2 - 1.0));
      type3 += reach * ((kd + 1.0) * (n2 - kd) / n2 - 1.0);
    } else {
      type3 += (kd + 1.0) * (n2 - kd) / n2;
    }
  }
  stats.mean_births = type1 + type3;
  stats.asymptote = condition == Excursion::kLoss ? static_cast<double>(N)
                                                  : 2.0 * static_cast<double>(N) * N;
  return stats;
}

namespace {

// Integer running sums so the reduction is exact in any order.
struct ExcursionTally {
  std::uint64_t count = 0;
  std::uint64_t births = 0;
  std::uint64_t births_sq = 0;
  std::vector<std::uint64_t> visits;
  std::vector<std::uint64_t> visits_sq;

  explicit ExcursionTally(std::size_t states = 0) : visits(states, 0), visits_sq(states, 0) {}

  void merge(const ExcursionTally& other) {
    count += other.count;
    births += other.births;
    births_sq += other.births_sq;
    for (std::size_t i = 0; i < visits.size(); ++i) {
      visits[i] += other.visits[i];
      visits_sq[i] += other.visits_sq[i];
    }
  }

  ExcursionStats finish(Excursion condition, long long N) const {
    ExcursionStats s;
    s.condition = condition;
    s.count = count;
    s.asymptote = condition == Excursion::kLoss ? static_cast<double>(N)
                                                : 2.0 * static_cast<double>(N) * N;
    s.per_state_visits.assign(visits.size(), 0.0);
    s.per_state_sem.assign(visits.size(), 0.0);
    if (count == 0) return s;
    const double n = static_cast<double>(count);
    auto mean_sem = [n](double sum, double sum_sq) {
      const double mean = sum / n;
      if (n < 2.0) return std::pair{mean, 0.0};
      const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
      return std::pair{mean, std::sqrt(var / n)};
    };
    std::tie(s.mean_births, s.births_sem) =
        mean_sem(static_cast<double>(births), static_cast<double>(births_sq));
    for (std::size_t k = 0; k < visits.size(); ++k) {
      std::tie(s.per_state_visits[k], s.per_state_sem[k]) =
          mean_sem(static_cast<double>(visits[k]), static_cast<double>(visits_sq[k]));
    }
    return s;
  }
};

constexpr std::size_t kMoranBlock = 1024;

}  // namespace

MoranSimulation moran_excursion_simulate(long long N, std::size_t replications,
                                         std::uint64_t seed, unsigned threads,
                                         long long start) {
  if (N < 1) throw std::invalid_argument("population size N must be >= 1");
  const long long two_n = 2 * N;
  if (start < 0 || start > two_n) throw std::invalid_argument("start outside 0..2N");
  const std::size_t states = static_cast<std::size_t>(two_n) + 1;
  const std::size_t blocks = (replications + kMoranBlock - 1) / kMoranBlock;

  std::vector<ExcursionTally> loss(blocks, ExcursionTally(states));
  std::vector<ExcursionTally> fix(blocks, ExcursionTally(states));

  parallel_for(blocks, threads, [&](std::size_t b) {
    std::vector<std::uint64_t> visits(states, 0);
    const std::size_t end = std::min(replications, (b + 1) * kMoranBlock);
    for (std::size_t rep = b * kMoranBlock; rep < end; ++rep) {
      ReplicationStream rng(seed, rep);
      std::fill(visits.begin(), visits.end(), 0);
      long long k = start;
      std::uint64_t births = 0;
      if (k > 0 && k < two_n) ++visits[static_cast<std::size_t>(k)];
      while (k > 0 && k < two_n) {
        // Rates times 2N: type I k^2, type II and type III k(2N - k) each.
        const double kd = static_cast<double>(k);
        const double same = kd * kd;
        const double cross = kd * (static_cast<double>(two_n) - kd);
        const double u = rng.uniform() * (same + 2.0 * cross);
        if (u < same) {
          ++births;
          continue;
        }
        if (u < same + cross) {
          --k;
        } else {
          ++births;
          ++k;
        }
        if (k > 0 && k < two_n) ++visits[static_cast<std::size_t>(k)];
      }
      ExcursionTally& tally = (k == 0 ? loss : fix)[b];
      ++tally.count;
      tally.births += births;
      tally.births_sq += births * births;
      for (std::size_t s = 1; s + 1 < states; ++s) {
        tally.visits[s] += visits[s];
        tally.visits_sq[s] += visits[s] * visits[s];
      }
    }
  });

  ExcursionTally loss_total(states), fix_total(states);
  for (std::size_t b = 0; b < blocks; ++b) {
    loss_total.merge(loss[b]);
    fix_total.merge(fix[b]);
  }
  MoranSimulation sim;
  sim.replications = replications;
  sim.seed = seed;
  sim.loss = loss_total.finish(Excursion::kLoss, N);
  sim.fixation = fix_total.finish(Excursion::kFixation, N);
  sim.fixation_fraction =
      replications ? static_cast<double>(fix_total.count) / static_cast<double>(replications)
                   : 0.0;
  return sim;
}

// ---------------------------------------------------------------------------
// Fixation-chain estimates

double double_mutation_expectation(const PopulationParams& params) {
  params.validate();
  return 2.0 * params.N * params.mu / (9.0 * params.W);
}

double rho(const PopulationParams& params) {
  params.validate();
  const double x = 4.0 * params.N * params.N * params.mu / (9.0 * params.W);
  return x / (1.0 + x);
}

TripleMutation triple_mutation_expectation(const PopulationParams& params) {
  params.validate();
  if (params.W < 3) throw std::invalid_argument("triple mutations need W >= 3");
  TripleMutation t;
  t.per_interval = 4.0 * std::pow(params.N, 3) * params.mu * params.mu / (9.0 * params.W);
  const auto chain = build_match_chain(params.W);
  const auto W = static_cast<std::size_t>(params.W);
  t.visits = greens_function(chain, 0, W - 3, W - 1);
  t.total = t.per_interval * t.visits;
  return t;
}

StoppingTimeEstimate approx3_expected_time(const PopulationParams& params,
                                           StoppingForm form,
                                           std::optional<double> rho_override) {
  params.validate();
  const int W = params.W;
  if (W < 3) throw std::invalid_argument("stopping-time estimate needs W >= 3");

  StoppingTimeEstimate est;
  est.rho = rho_override ? *rho_override : rho(params);
  if (!(est.rho >= 0.0 && est.rho <= 1.0)) throw std::invalid_argument("rho outside [0,1]");
  est.regime_ok = std::pow(params.N, 3) * params.mu * params.mu <= kTripleMutationRegime;

  const auto chain = build_match_chain(W);
  const auto two_away = static_cast<std::size_t>(W - 2);
  const auto tau = expected_hitting_time(chain, two_away);
  const double up = chain.up[two_away];
  const double down = chain.down[two_away];
  const double climb = tau[two_away - 1];  // E_{W-3} tau_{W-2}
  const double keep = 1.0 - est.rho;

  // From W-2: coin first; otherwise step up (done), stay, or fall to W-3
  // and come back.
  const double numerator = form == StoppingForm::kPrinted ? up + down * climb
                                                          : 1.0 + down * climb;
  est.from_two_away = keep * numerator / (1.0 - keep * (1.0 - up));

  est.per_state.assign(static_cast<std::size_t>(W) + 1, 0.0);
  for (std::size_t x = 0; x < two_away; ++x) est.per_state[x] = tau[x] + est.from_two_away;
  est.per_state[two_away] = est.from_two_away;

  const auto pi = match_stationary(W);
  for (std::size_t x = 0; x < pi.size(); ++x) est.mean_steps += pi[x] * est.per_state[x];
  est.generations = params.mu > 0.0 ? est.mean_steps / (W * params.mu)
                                    : std::numeric_limits<double>::infinity();
  est.years = est.generations * params.generation_years;
  return est;
}

SegmentRhos rho1_rho2(const PopulationParams& params) {
  params.validate();
  SegmentRhos s;
  s.rho1 = 1.0 / (1.0 + 3.0 * params.L / (2.0 * params.N));
  s.r = 4.0 * params.N * params.N * params.mu / (9.0 * params.L);
  s.rho2 = s.r / (s.r + 1.0);
  return s;
}

KilledChainResult killed_fixation_chain_sim(const DnaWord& word,
                                            const PopulationParams& params,
                                            std::size_t replications, std::uint64_t seed,
                                            const KilledChainOptions& options) {
  params.validate();
  const int W = word.size();
  const auto L = static_cast<std::size_t>(std::llround(params.L));
  if (W < 2) throw std::invalid_argument("killed chain needs W >= 2");
  if (L <= 2 * static_cast<std::size_t>(W)) {
    throw std::invalid_argument("segment length must exceed twice the word length");
  }
  if (replications < 1) throw std::invalid_argument("need at least one replication");

  const auto rhos = rho1_rho2(params);
  const double rho2 = options.rho2_override ? *options.rho2_override : rhos.rho2;
  const double keep1 = 1.0 - rhos.rho1;
  const double keep2 = 1.0 - rho2;

  std::vector<std::uint64_t> samples(replications, 0);
  parallel_for(replications, options.threads, [&](std::size_t rep) {
    ReplicationStream rng(seed, rep);
    CircularSegment segment(word, L);

    auto killed = [&] {
      if (segment.windows_with(W) > 0) return true;
      if (options.stop_on_match_minus_1) {
        const auto near = segment.windows_with(W - 1);
        if (near > 0) {
          if (!options.exact_rho1) return true;
          if (rng.uniform() >= std::pow(keep1, static_cast<double>(near))) return true;
        }
      }
      const auto two_off = segment.windows_with(W - 2);
      if (two_off > 0 && rho2 > 0.0) {
        // Independent coin per window: survive all with keep2^count.
        if (rng.uniform() >= std::pow(keep2, static_cast<double>(two_off))) return true;
      }
      return false;
    };

    segment.randomize(rng);
    if (killed()) return;
    for (std::uint64_t step = 1; step <= options.step_cap; ++step) {
      segment.mutate(rng);
      if (killed()) {
        samples[rep] = step;
        return;
      }
    }
    throw StepCapExceeded(rep, options.step_cap);
  });

  KilledChainResult result;
  result.summary = summarize_samples(std::move(samples), seed, options.bin_width);
  result.rho1 = rhos.rho1;
  result.rho2 = rho2;
  const double rate = params.L * params.mu;
  result.conditional_generations =
      rate > 0.0 ? result.summary.conditional_mean / rate
                 : std::numeric_limits<double>::infinity();
  result.conditional_years = result.conditional_generations * params.generation_years;
  return result;
}

// ---------------------------------------------------------------------------
// Closed-form estimates

double mixture_mean_years(double base_years, double poisson_mean, double divisor) {
  if (!(base_years >= 0.0) || !(poisson_mean >= 0.0) || !(divisor > 0.0)) {
    throw std::invalid_argument("mixture needs base >= 0, mean >= 0, divisor > 0");
  }
  if (poisson_mean == 0.0) return 0.0;
  const double log_m = std::log(poisson_mean);
  double sum = 0.0;
  for (long long k = 1;; ++k) {
    const double kd = static_cast<double>(k);
    const double term =
        std::exp(-poisson_mean + kd * log_m - std::lgamma(kd + 1.0)) / kd;
    sum += term;
    if (kd > poisson_mean && term < 1e-12 * sum) break;
  }
  return base_years / divisor * sum;
}

CoalescentQuantities coalescent_quantities(const PopulationParams& params) {
  params.validate();
  CoalescentQuantities c;
  const double two_n = 2.0 * params.N;
  const auto terms = static_cast<long long>(std::floor(two_n)) - 1;
  double harmonic = 0.0;
  for (long long j = terms; j >= 1; --j) harmonic += 1.0 / static_cast<double>(j);
  c.tree_length = 4.0 * params.N * harmonic;
  c.tree_length_asymptotic = 4.0 * params.N * std::log(two_n);
  c.expected_mutations_W = params.W * params.mu * c.tree_length_asymptotic;
  c.expected_mutations_L = params.L * params.mu * c.tree_length_asymptotic;
  c.expected_mutations_W_exact = params.W * params.mu * c.tree_length;
  c.expected_mutations_L_exact = params.L * params.mu * c.tree_length;
  c.site_frequency_mean_fraction = two_n > 1.0 ? 1.0 / std::log(two_n) : 1.0;
  return c;
}

AlmostMatchBalance lemma1_balance(int W, double L, double mutations_on_tree, double em1,
                                  double em2) {
  if (W < 1 || !(L > 0.0)) throw std::invalid_argument("bad word or segment length");
  const double per_site = mutations_on_tree / L;
  // A match-minus-1 window has W sites a mutation can spoil; a
  // match-minus-2 window has 2 sites, each repaired by 1 of 3 mutations.
  return {em1 * W * per_site, em2 * 2.0 * (1.0 / 3.0) * per_site};
}

AlmostMatchBalance lemma1_balance(const PopulationParams& params, double em1, double em2) {
  const auto c = coalescent_quantities(params);
  return lemma1_balance(params.W, params.L, c.expected_mutations_L, em1, em2);
}

double fermi_binding(double mismatches, double threshold, double epsilon) {
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be >= 0");
  if (mismatches == threshold) return 0.5;
  return 1.0 / (1.0 + std::exp(epsilon * (mismatches - threshold)));
}

double round_significant(double value, int digits) {
  if (value == 0.0 || !std::isfinite(value)) return value;
  const double scale = std::pow(10.0, digits - 1 - static_cast<int>(std::floor(std::log10(std::abs(value)))));
  return std::round(value * scale) / scale;
}

HeadlineEstimates headline_estimates(const PopulationParams& params,
                                     double killed_conditional_mean, double segment_L) {
  params.validate();
  HeadlineEstimates h;
  // One match-minus-1 across 2N copies is repaired at rate 2N mu / 3.
  const double repair_generations = 3.0 / (2.0 * params.N * params.mu);
  h.single_match_minus_1_years = repair_generations * params.generation_years;
  // Poisson means are used at the three significant figures they are quoted
  // with (4.5 and 3.94 for the defaults).
  h.em1_six = round_significant(expected_almost_matches(6, segment_L, 1), 3);
  h.em2_eight = round_significant(expected_almost_matches(8, segment_L, 2), 3);
  h.six_letter_years = mixture_mean_years(h.single_match_minus_1_years, h.em1_six, 1.0);
  h.seven_of_eight_years = mixture_mean_years(h.single_match_minus_1_years, h.em2_eight, 2.0);
  h.no_match_years =
      killed_conditional_mean / (params.L * params.mu) * params.generation_years;
  return h;
}

}  // namespace wordwait

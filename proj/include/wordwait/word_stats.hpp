#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wordwait/dna_word.hpp"

namespace wordwait {

/// How a word overlaps its own shifts. Entry k-1 describes the shift by k,
/// k = 1..W-1.
struct OverlapProfile {
  int W = 0;
  std::vector<int> y;  // 1 if word and k-shift agree on the whole overlap
  std::vector<int> m;  // number of agreeing letters inside the overlap

  /// The shifts k with y_k = 1, ascending.
  std::vector<int> self_overlap_shifts() const;
};

OverlapProfile overlap_profile(const DnaWord& word);

/// Chen-Stein terms for the occurrence count of one word in a circular
/// segment. `lambda` is gamma = L/4^W for the initial condition.
struct ChenSteinReport {
  double lambda = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
  double tv_bound = 0.0;    // 2(b1 + b2)(1 - e^-lambda)/lambda
  double clump_size = 0.0;  // (1 + 2(S + Q))/(1 - a); 0 at time 0
  double q0 = 0.0;          // sum_k y_k 4^-k
  double q = 0.0;           // sum_k y_k 4^-k (W-k)/W
  double s_overlap = 0.0;   // sum_k z(m_k, k)
};

/// Bounds for the number of matches in a uniformly random segment.
/// Requires L > 2W.
ChenSteinReport initial_condition_bounds(const DnaWord& word, double L);

/// Bounds for the number of occurrences by a time at which the expected
/// count is `lambda`.
ChenSteinReport time_T_bounds(const DnaWord& word, double L, double lambda);

/// Same, with the match-chain hitting probabilities h(0..W) supplied by the
/// caller so scans do not rebuild them per word.
ChenSteinReport time_T_bounds(const DnaWord& word, double L, double lambda,
                              std::span<const double> h);

/// Clump size estimate (1 + 2(S + Q))/(1 - a).
double clump_size(const DnaWord& word);

/// Word-independent bound for the declumped count:
/// 2(4W - 3)/L * lambda_bar (1 - e^-lambda_bar).
double declumped_tv_bound(int W, double L, double lambda_bar);

/// Expected number of windows (out of L, circular) that differ from the
/// word in exactly `mismatches` letters.
double expected_almost_matches(int W, double L, int mismatches);

/// P(Binomial(k, 1/4) = j).
double quarter_binomial(int k, int j);

/// True if the word has a period p <= W/2 (y_p = 1), i.e. it is built from
/// a repeated short block. Constant words qualify.
bool is_repetitive(const DnaWord& word);

std::vector<DnaWord> repetitive_words(int W);

struct WordScanEntry {
  DnaWord word;
  double b1 = 0.0;
  double b2 = 0.0;
  double tv_bound = 0.0;
  double clump_size = 0.0;
};

struct WordScan {
  int W = 0;
  double L = 0.0;
  double lambda = 0.0;
  std::vector<WordScanEntry> entries;  // nonconstant words, lexicographic
  std::size_t best = 0;                // index of the smallest tv bound
  std::size_t worst = 0;               // index of the largest tv bound
};

/// Evaluates time_T_bounds for every nonconstant word of length W <= 10.
/// `threads` = 0 uses the hardware concurrency; the result does not depend
/// on it.
WordScan scan_all_words(int W, double L, double lambda, unsigned threads = 0);

}  // namespace wordwait

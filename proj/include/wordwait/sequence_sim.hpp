#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "wordwait/dna_word.hpp"
#include "wordwait/rng.hpp"
#include "wordwait/stats.hpp"

namespace wordwait {

inline constexpr std::uint64_t kDefaultStepCap = 1'000'000'000;

/// A replication ran past its step cap.
class StepCapExceeded : public std::runtime_error {
 public:
  StepCapExceeded(std::size_t replication, std::uint64_t cap)
      : std::runtime_error("replication " + std::to_string(replication) +
                           " exceeded the step cap of " + std::to_string(cap)),
        replication_(replication) {}

  std::size_t replication() const { return replication_; }

 private:
  std::size_t replication_;
};

/// Circular DNA segment that tracks, for each of its L windows, how many
/// letters agree with a target word, plus how many windows sit at each
/// agreement level. A letter change touches only the W windows covering it.
class CircularSegment {
 public:
  CircularSegment(const DnaWord& target, std::size_t length);

  void randomize(ReplicationStream& rng);
  void assign(const std::vector<Letter>& letters);

  /// Replaces the letter at `pos`.
  void set_letter(std::size_t pos, Letter letter);

  /// One mutation of the jump chain: a uniform position takes one of the
  /// three other letters, uniformly.
  void mutate(ReplicationStream& rng) {
    const std::size_t pos = rng.below(static_cast<std::uint32_t>(length_));
    const auto shift = static_cast<Letter>(1 + rng.below(3));
    set_letter(pos, static_cast<Letter>((letters_[pos] + shift) & 3u));
  }

  /// Number of windows agreeing with the target in exactly `matches`
  /// letters.
  std::size_t windows_with(int matches) const {
    return level_count_[static_cast<std::size_t>(matches)];
  }

  std::size_t length() const { return length_; }
  int word_length() const { return width_; }
  Letter letter(std::size_t pos) const { return letters_[pos]; }
  int window_matches(std::size_t start) const { return window_matches_[start]; }

 private:
  void recount();

  std::vector<Letter> target_;
  std::size_t length_;
  int width_;
  std::vector<Letter> letters_;
  std::vector<int> window_matches_;
  std::vector<std::size_t> level_count_;
};

struct SimConfig {
  DnaWord word;
  std::size_t L = 1024;
  std::size_t replications = 100'000;
  std::uint64_t master_seed = 1;
  std::uint64_t bin_width = 100;
  std::uint64_t step_cap = kDefaultStepCap;
  unsigned threads = 0;  // 0: hardware concurrency

  void validate() const;
};

/// Summary of one batch of waiting times measured in mutations.
struct SimResult {
  std::size_t replications = 0;
  std::uint64_t seed = 0;
  double atom_at_zero = 0.0;
  double conditional_mean = 0.0;           // mean of the positive samples
  double conditional_sem = 0.0;            // its standard error
  std::uint64_t bin_width = 0;
  std::vector<std::uint64_t> samples;      // per replication, in index order
  std::vector<HistogramBin> histogram;     // positive samples only

  std::vector<double> positive_samples() const;
};

/// Builds the summary fields from raw per-replication samples.
SimResult summarize_samples(std::vector<std::uint64_t> samples, std::uint64_t seed,
                            std::uint64_t bin_width);

/// Mutations until the word first shows up in some window of a circular
/// segment started from uniform letters. 0 if it is there at the start.
SimResult simulate_segment_waiting(const SimConfig& config);

struct InitialMatchDistribution {
  std::size_t replications = 0;
  std::uint64_t seed = 0;
  double gamma = 0.0;            // L / 4^W
  std::vector<double> pmf;       // empirical law of the match count
  double tv_to_poisson = 0.0;    // against Poisson(gamma)
  double sampling_slack = 0.0;   // 3 * 0.5 * sum_k sqrt(p_k (1 - p_k) / n)
  double p_at_least_one = 0.0;
};

/// Counts exact matches in uniformly random circular segments, L >= W.
InitialMatchDistribution initial_match_distribution(const DnaWord& word, std::size_t L,
                                                    std::size_t replications,
                                                    std::uint64_t seed,
                                                    unsigned threads = 0);

/// Writes `# key=value` header lines, the summary (atom_at_zero,
/// conditional_mean) and then `bin_start,count` rows. Throws
/// std::runtime_error if the file cannot be written.
void export_histogram(const SimResult& result, const std::filesystem::path& path,
                      const std::map<std::string, std::string>& header = {});

}  // namespace wordwait

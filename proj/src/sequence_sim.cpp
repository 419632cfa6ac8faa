#include "wordwait/sequence_sim.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "wordwait/format.hpp"
#include "wordwait/parallel.hpp"

namespace wordwait {

CircularSegment::CircularSegment(const DnaWord& target, std::size_t length)
    : target_(target.letters()),
      length_(length),
      width_(target.size()),
      letters_(length, 0),
      window_matches_(length, 0),
      level_count_(static_cast<std::size_t>(target.size()) + 1, 0) {
  if (length < static_cast<std::size_t>(width_)) {
    throw std::invalid_argument("segment shorter than the word");
  }
  recount();
}

void CircularSegment::randomize(ReplicationStream& rng) {
  // 32 letters per 64-bit draw.
  for (std::size_t i = 0; i < length_; i += 32) {
    std::uint64_t bits = rng.next();
    const std::size_t end = std::min(length_, i + 32);
    for (std::size_t j = i; j < end; ++j, bits >>= 2) letters_[j] = static_cast<Letter>(bits & 3u);
  }
  recount();
}

void CircularSegment::assign(const std::vector<Letter>& letters) {
  if (letters.size() != length_) throw std::invalid_argument("segment length mismatch");
  letters_ = letters;
  recount();
}

void CircularSegment::recount() {
  std::fill(level_count_.begin(), level_count_.end(), 0);
  for (std::size_t start = 0; start < length_; ++start) {
    int agree = 0;
    for (int o = 0; o < width_; ++o) {
      std::size_t pos = start + static_cast<std::size_t>(o);
      if (pos >= length_) pos -= length_;
      agree += letters_[pos] == target_[static_cast<std::size_t>(o)];
    }
    window_matches_[start] = agree;
    ++level_count_[static_cast<std::size_t>(agree)];
  }
}

void CircularSegment::set_letter(std::size_t pos, Letter letter) {
  const Letter old = letters_[pos];
  if (old == letter) return;
  letters_[pos] = letter;
  for (int o = 0; o < width_; ++o) {
    const Letter t = target_[static_cast<std::size_t>(o)];
    const int delta = (letter == t) - (old == t);
    if (delta == 0) continue;
    const std::size_t off = static_cast<std::size_t>(o);
    const std::size_t start = pos >= off ? pos - off : pos + length_ - off;
    int& m = window_matches_[start];
    --level_count_[static_cast<std::size_t>(m)];
    m += delta;
    ++level_count_[static_cast<std::size_t>(m)];
  }
}

void SimConfig::validate() const {
  if (word.size() == 0) throw std::invalid_argument("no target word");
  if (replications < 1) throw std::invalid_argument("need at least one replication");
  if (!(L > 2 * static_cast<std::size_t>(word.size()))) {
    throw std::invalid_argument("segment length must exceed twice the word length");
  }
  if (bin_width < 1) throw std::invalid_argument("bin width must be at least 1");
  if (L > std::numeric_limits<std::uint32_t>::max()) {
    throw std::invalid_argument("segment too long");
  }
}

std::vector<double> SimResult::positive_samples() const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (auto s : samples) {
    if (s > 0) out.push_back(static_cast<double>(s));
  }
  return out;
}

SimResult summarize_samples(std::vector<std::uint64_t> samples, std::uint64_t seed,
                            std::uint64_t bin_width) {
  SimResult r;
  r.replications = samples.size();
  r.seed = seed;
  r.bin_width = bin_width;
  std::vector<std::uint64_t> positive;
  positive.reserve(samples.size());
  for (auto s : samples) {
    if (s > 0) positive.push_back(s);
  }
  r.atom_at_zero = samples.empty() ? 0.0
                                   : static_cast<double>(samples.size() - positive.size()) /
                                         static_cast<double>(samples.size());
  r.samples = std::move(samples);
  const auto pos = r.positive_samples();
  const auto m = moments(pos);
  r.conditional_mean = m.mean;
  r.conditional_sem = m.sem;
  r.histogram = make_histogram(positive, bin_width);
  return r;
}

SimResult simulate_segment_waiting(const SimConfig& config) {
  config.validate();
  const int W = config.word.size();
  std::vector<std::uint64_t> samples(config.replications, 0);

  parallel_for(config.replications, config.threads, [&](std::size_t rep) {
    ReplicationStream rng(config.master_seed, rep);
    CircularSegment segment(config.word, config.L);
    segment.randomize(rng);
    if (segment.windows_with(W) > 0) return;
    for (std::uint64_t step = 1; step <= config.step_cap; ++step) {
      segment.mutate(rng);
      if (segment.windows_with(W) > 0) {
        samples[rep] = step;
        return;
      }
    }
    throw StepCapExceeded(rep, config.step_cap);
  });
  return summarize_samples(std::move(samples), config.master_seed, config.bin_width);
}

InitialMatchDistribution initial_match_distribution(const DnaWord& word, std::size_t L,
                                                    std::size_t replications,
                                                    std::uint64_t seed, unsigned threads) {
  const int W = word.size();
  if (W == 0 || L < static_cast<std::size_t>(W)) {
    throw std::invalid_argument("segment shorter than the word");
  }
  if (replications < 1) throw std::invalid_argument("need at least one replication");

  std::vector<std::size_t> counts(replications, 0);
  parallel_for(replications, threads, [&](std::size_t rep) {
    ReplicationStream rng(seed, rep);
    CircularSegment segment(word, L);
    segment.randomize(rng);
    counts[rep] = segment.windows_with(W);
  });

  InitialMatchDistribution d;
  d.replications = replications;
  d.seed = seed;
  d.gamma = static_cast<double>(L) * std::pow(4.0, -W);
  for (auto c : counts) {
    if (c >= d.pmf.size()) d.pmf.resize(c + 1, 0.0);
    d.pmf[c] += 1.0;
  }
  const double n = static_cast<double>(replications);
  double spread = 0.0;
  for (double& p : d.pmf) {
    p /= n;
    spread += std::sqrt(p * (1.0 - p) / n);
  }
  d.tv_to_poisson = tv_to_poisson(d.pmf, d.gamma);
  d.sampling_slack = 3.0 * 0.5 * spread;
  d.p_at_least_one = 1.0 - d.pmf[0];
  return d;
}

void export_histogram(const SimResult& result, const std::filesystem::path& path,
                      const std::map<std::string, std::string>& header) {
  if (result.replications == 0) throw std::invalid_argument("empty simulation result");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (const auto& [key, value] : header) out << "# " << key << '=' << value << '\n';
  out << "# seed=" << result.seed << '\n'
      << "# replications=" << result.replications << '\n'
      << "# bin_width=" << result.bin_width << '\n'
      << "# atom_at_zero=" << format_number(result.atom_at_zero) << '\n'
      << "# conditional_mean=" << format_number(result.conditional_mean) << '\n'
      << "bin_start,count\n";
  for (const auto& bin : result.histogram) out << bin.start << ',' << bin.count << '\n';
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace wordwait

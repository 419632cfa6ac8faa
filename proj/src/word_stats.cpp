#include "wordwait/word_stats.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "wordwait/mutation_chain.hpp"
#include "wordwait/parallel.hpp"

namespace wordwait {

std::vector<int> OverlapProfile::self_overlap_shifts() const {
  std::vector<int> shifts;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i]) shifts.push_back(static_cast<int>(i) + 1);
  }
  return shifts;
}

OverlapProfile overlap_profile(const DnaWord& word) {
  const int W = word.size();
  OverlapProfile p;
  p.W = W;
  p.y.assign(static_cast<std::size_t>(std::max(W - 1, 0)), 0);
  p.m.assign(p.y.size(), 0);
  for (int k = 1; k < W; ++k) {
    int agree = 0;
    for (int i = 0; i + k < W; ++i) agree += word[i + k] == word[i];
    p.m[k - 1] = agree;
    p.y[k - 1] = agree == W - k;
  }
  return p;
}

double quarter_binomial(int k, int j) {
  if (k < 0 || j < 0 || j > k) return 0.0;
  double coeff = 1.0;
  for (int i = 1; i <= j; ++i) coeff = coeff * (k - j + i) / i;
  return coeff * std::pow(0.25, j) * std::pow(0.75, k - j);
}

namespace {

double tv_from_terms(double b1, double b2, double lambda) {
  return 2.0 * (b1 + b2) * (1.0 - std::exp(-lambda)) / lambda;
}

void require_segment(int W, double L) {
  if (!(L > 2.0 * W)) {
    throw std::invalid_argument("segment length must exceed twice the word length");
  }
}

}  // namespace

ChenSteinReport initial_condition_bounds(const DnaWord& word, double L) {
  const int W = word.size();
  require_segment(W, L);
  const auto profile = overlap_profile(word);
  const double p_alpha = std::pow(4.0, -W);

  ChenSteinReport r;
  r.lambda = L * p_alpha;
  for (int k = 1; k < W; ++k) r.q0 += profile.y[k - 1] * std::pow(4.0, -k);
  r.b1 = r.lambda * (2.0 * W - 1.0) * p_alpha;
  r.b2 = 2.0 * r.lambda * r.q0;
  r.tv_bound = tv_from_terms(r.b1, r.b2, r.lambda);
  return r;
}

ChenSteinReport time_T_bounds(const DnaWord& word, double L, double lambda,
                              std::span<const double> h) {
  const int W = word.size();
  require_segment(W, L);
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  if (h.size() != static_cast<std::size_t>(W) + 1) {
    throw std::invalid_argument("hitting probabilities must cover 0..W");
  }
  const auto profile = overlap_profile(word);

  ChenSteinReport r;
  r.lambda = lambda;
  for (int k = 1; k < W; ++k) {
    const int y = profile.y[k - 1];
    const int m = profile.m[k - 1];
    r.q0 += y * std::pow(4.0, -k);
    r.q += y * std::pow(4.0, -k) * (W - k) / W;
    // z(m_k, k): reach W in the shifted strip before its match count hits 0;
    // simultaneous completion (m + j = W) is already counted in Q.
    for (int j = 0; j <= k; ++j) {
      if (m + j < W) r.s_overlap += quarter_binomial(k, j) * h[m + j];
    }
  }
  r.b1 = lambda * lambda * (2.0 * W - 1.0) / L;
  r.b2 = lambda * lambda * (4.0 * W - 4.0) / L + lambda * (2.0 * r.q + 4.0 * r.s_overlap);
  r.tv_bound = tv_from_terms(r.b1, r.b2, lambda);
  const double a = h[W - 1];
  r.clump_size = (1.0 + 2.0 * (r.s_overlap + r.q)) / (1.0 - a);
  return r;
}

ChenSteinReport time_T_bounds(const DnaWord& word, double L, double lambda) {
  const auto h = match_hitting_probabilities(word.size());
  return time_T_bounds(word, L, lambda, h);
}

double clump_size(const DnaWord& word) {
  // S and Q do not depend on L or lambda; any admissible pair will do.
  const double L = 2.0 * word.size() + 1.0;
  return time_T_bounds(word, L, 1.0).clump_size;
}

double declumped_tv_bound(int W, double L, double lambda_bar) {
  if (W < 1 || !(L > 0.0) || lambda_bar < 0.0) {
    throw std::invalid_argument("declumped bound needs W >= 1, L > 0, lambda >= 0");
  }
  return 2.0 * (4.0 * W - 3.0) / L * lambda_bar * (1.0 - std::exp(-lambda_bar));
}

double expected_almost_matches(int W, double L, int mismatches) {
  if (W < 1 || mismatches < 0 || mismatches > W) {
    throw std::invalid_argument("mismatch count must lie in 0..W");
  }
  double coeff = 1.0;
  for (int i = 1; i <= mismatches; ++i) coeff = coeff * (W - mismatches + i) / i;
  return L * coeff * std::pow(0.75, mismatches) * std::pow(0.25, W - mismatches);
}

bool is_repetitive(const DnaWord& word) {
  if (word.is_constant()) return true;
  const auto profile = overlap_profile(word);
  for (int p = 1; p <= word.size() / 2; ++p) {
    if (profile.y[p - 1]) return true;
  }
  return false;
}

std::vector<DnaWord> repetitive_words(int W) {
  if (W < 1 || W > 10) throw std::invalid_argument("word length must be 1..10");
  std::vector<DnaWord> out;
  const std::uint32_t count = 1u << (2 * W);
  for (std::uint32_t code = 0; code < count; ++code) {
    auto word = DnaWord::from_packed(code, W);
    if (is_repetitive(word)) out.push_back(std::move(word));
  }
  return out;
}

WordScan scan_all_words(int W, double L, double lambda, unsigned threads) {
  if (W < 2 || W > 10) throw std::invalid_argument("scan needs word length 2..10");
  const auto h = match_hitting_probabilities(W);
  const std::uint32_t count = 1u << (2 * W);
  constexpr std::uint32_t kChunk = 4096;
  const std::size_t chunks = (count + kChunk - 1) / kChunk;

  std::vector<WordScanEntry> all(count);
  std::vector<char> keep(count, 0);
  parallel_for(chunks, threads, [&](std::size_t c) {
    const auto begin = static_cast<std::uint32_t>(c * kChunk);
    const std::uint32_t end = std::min(count, begin + kChunk);
    for (std::uint32_t code = begin; code < end; ++code) {
      auto word = DnaWord::from_packed(code, W);
      if (word.is_constant()) continue;
      const auto r = time_T_bounds(word, L, lambda, h);
      all[code] = {std::move(word), r.b1, r.b2, r.tv_bound, r.clump_size};
      keep[code] = 1;
    }
  });

  WordScan scan;
  scan.W = W;
  scan.L = L;
  scan.lambda = lambda;
  scan.entries.reserve(count);
  for (std::uint32_t code = 0; code < count; ++code) {
    if (keep[code]) scan.entries.push_back(std::move(all[code]));
  }
  for (std::size_t i = 1; i < scan.entries.size(); ++i) {
    if (scan.entries[i].tv_bound < scan.entries[scan.best].tv_bound) scan.best = i;
    if (scan.entries[i].tv_bound > scan.entries[scan.worst].tv_bound) scan.worst = i;
  }
  return scan;
}

}  // namespace wordwait

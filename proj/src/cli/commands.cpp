#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cli.hpp"
#include "wordwait/dna_word.hpp"
#include "wordwait/format.hpp"
#include "wordwait/markov_core.hpp"
#include "wordwait/mutation_chain.hpp"
#include "wordwait/population.hpp"
#include "wordwait/sequence_sim.hpp"
#include "wordwait/stats.hpp"
#include "wordwait/word_stats.hpp"

namespace wordwait::cli {

namespace {

using Row = std::vector<Cell>;

Cell num(double v) { return v; }
Cell num(std::uint64_t v) { return static_cast<std::int64_t>(v); }
Cell num(int v) { return static_cast<std::int64_t>(v); }

const std::vector<std::string> kTable2Words = {"ACACAC", "ACAACA", "ACGACG", "AACGAA",
                                               "ACGTAC", "ACGTCA", "ACGTAG"};
const std::vector<std::string> kTable3Words = {
    "AACCGT",   "ACGCTA",   "ACAGCA",   "AACGAA",   "ACAACA",   "ACACAC",
    "ACAGCTGT", "ACAAGGGC", "ACAGACAG", "AAAAAACA", "AACAACAA", "ACACACAC"};
const std::vector<std::string> kTable4Words = {
    "AACCGT",   "ACGCTA",   "ACAGCA",   "AACGAA",   "AACAAC",   "ACACAC",
    "ACAGCTGT", "ACAAGGGC", "ACAGACAG", "AAAACAAA", "AACAACAA", "ACACACAC"};
const std::vector<std::string> kTable5Words = {"ACAGCTGT", "ACAAGGGC", "ACAGACAG",
                                               "AAAACAAA", "AACAACAA", "ACACACAC"};

std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < items.size(); ++i) s += (i ? sep : "") + items[i];
  return s;
}

std::string shifts_text(const std::vector<int>& shifts) {
  if (shifts.empty()) return "none";
  std::vector<std::string> parts;
  for (int k : shifts) parts.push_back(std::to_string(k));
  return join(parts, " ");
}

/// Explicit words, or the defaults restricted to the requested W.
std::vector<DnaWord> pick_words(const ResolvedParams& p,
                                const std::vector<std::string>& defaults,
                                bool filter_by_w) {
  std::vector<DnaWord> out;
  if (!p.words.empty()) {
    for (const auto& w : p.words) out.push_back(DnaWord::parse(w));
    return out;
  }
  for (const auto& w : defaults) {
    auto word = DnaWord::parse(w);
    if (filter_by_w && p.word_lengths.size() == 1 && word.size() != p.word_lengths.front()) {
      continue;
    }
    out.push_back(word);
  }
  if (out.empty()) throw std::invalid_argument("no default words of that length; use --words");
  return out;
}

DnaWord single_word(const ResolvedParams& p, const char* fallback) {
  if (p.words.size() > 1) throw std::invalid_argument("this command takes a single word");
  return DnaWord::parse(p.words.empty() ? fallback : p.words.front());
}

std::size_t segment_length(const ResolvedParams& p) {
  const double L = p.population.L;
  if (L != std::floor(L) || L < 1) throw std::invalid_argument("L must be a positive integer");
  return static_cast<std::size_t>(L);
}

std::size_t replications(const ResolvedParams& p) {
  if (p.reps < 1) throw std::invalid_argument("this command needs --reps >= 1");
  return static_cast<std::size_t>(p.reps);
}

double ks_of(const SimResult& r) {
  const auto pos = r.positive_samples();
  if (pos.empty()) return std::nan("");
  return ks_exponential(pos, r.conditional_mean);
}

SimResult segment_sim(const DnaWord& word, const ResolvedParams& p, std::size_t reps) {
  SimConfig config;
  config.word = word;
  config.L = segment_length(p);
  config.replications = reps;
  config.master_seed = p.seed;
  config.bin_width = p.bin;
  config.step_cap = p.step_cap;
  config.threads = p.threads;
  return simulate_segment_waiting(config);
}

KilledChainResult killed_sim(const DnaWord& word, const ResolvedParams& p,
                             std::size_t reps) {
  KilledChainOptions options;
  options.bin_width = p.bin;
  options.step_cap = p.step_cap;
  options.threads = p.threads;
  PopulationParams params = p.population;
  params.W = word.size();
  segment_length(p);
  return killed_fixation_chain_sim(word, params, reps, p.seed, options);
}

// ---------------------------------------------------------------------------

Table table1(const ResolvedParams& p) {
  Table t;
  t.columns = {"W", "a", "E_pi_T_W", "E_0_T_W", "clump_mean_formula", "relaxation_time",
               "exponential_error_bound"};
  for (int W : p.word_lengths) {
    const auto s = chain_summary(W);
    t.add_row({num(W), num(s.a), num(s.mean_stationary), num(s.mean_from_zero),
               num(s.clump_mean_formula), num(s.relaxation_time),
               num(exponential_error_bound(W))});
  }
  return t;
}

Table table2(const ResolvedParams& p) {
  const int W = p.word_lengths.front();
  const double L = p.population.L;
  std::vector<DnaWord> words;
  for (const auto& w : p.words) words.push_back(DnaWord::parse(w));

  // Exhaustive classification by self-overlap set.
  std::map<std::vector<int>, std::size_t> category_size;
  std::map<std::vector<int>, DnaWord> first_word;
  const std::uint32_t total = 1u << (2 * W);
  if (W > 10) throw std::invalid_argument("table2 enumerates words; W must be <= 10");
  double max_nonrepetitive = 0.0;
  std::size_t repetitive = 0;
  for (std::uint32_t code = 0; code < total; ++code) {
    const auto word = DnaWord::from_packed(code, W);
    const auto shifts = overlap_profile(word).self_overlap_shifts();
    if (category_size[shifts]++ == 0 && !word.is_constant()) first_word.emplace(shifts, word);
    if (is_repetitive(word)) {
      ++repetitive;
    } else {
      const auto r = initial_condition_bounds(word, L);
      max_nonrepetitive = std::max(max_nonrepetitive, 2.0 * (r.b1 + r.b2));
    }
  }
  if (words.empty()) {
    if (W == 6) {
      for (const auto& w : kTable2Words) words.push_back(DnaWord::parse(w));
    } else {
      for (const auto& [shifts, word] : first_word) words.push_back(word);
    }
  }

  Table t;
  t.columns = {"shifts", "word", "b1_over_gamma", "b2_over_gamma", "words_in_category"};
  for (const auto& word : words) {
    if (word.size() != W) throw std::invalid_argument("table2 words must all have length W");
    const auto shifts = overlap_profile(word).self_overlap_shifts();
    const auto r = initial_condition_bounds(word, L);
    t.add_row({shifts_text(shifts), word.str(), num(r.b1 / r.lambda), num(r.b2 / r.lambda),
               num(static_cast<std::uint64_t>(category_size[shifts]))});
  }
  const double gamma = L / std::pow(4.0, W);
  t.add_summary("gamma", gamma);
  t.add_summary("nonconstant_words", num(static_cast<std::uint64_t>(total - 4)));
  t.add_summary("repetitive_words", num(static_cast<std::uint64_t>(repetitive)));
  t.add_summary("max_nonrepetitive_two_b", max_nonrepetitive);
  t.add_summary("max_nonrepetitive_two_b_over_gamma", max_nonrepetitive / gamma);
  return t;
}

Table table3(const ResolvedParams& p) {
  const auto words = pick_words(p, kTable3Words, true);
  const double L = p.population.L;
  Table t;
  t.columns = {"word", "W", "b1", "b2", "tv_bound", "q", "s_overlap"};
  std::set<int> lengths;
  for (const auto& word : words) {
    const auto r = time_T_bounds(word, L, p.lambda);
    t.add_row({word.str(), num(word.size()), num(r.b1), num(r.b2), num(r.tv_bound),
               num(r.q), num(r.s_overlap)});
    lengths.insert(word.size());
  }
  for (int W : lengths) {
    if (W < 2 || W > 10) continue;
    const auto scan = scan_all_words(W, L, p.lambda, p.threads);
    const std::string suffix = "_W" + std::to_string(W);
    t.add_summary("best" + suffix, scan.entries[scan.best].word.str());
    t.add_summary("best_tv" + suffix, scan.entries[scan.best].tv_bound);
    t.add_summary("worst" + suffix, scan.entries[scan.worst].word.str());
    t.add_summary("worst_tv" + suffix, scan.entries[scan.worst].tv_bound);
  }
  return t;
}

Table table4(const ResolvedParams& p) {
  const auto words = pick_words(p, kTable4Words, true);
  Table t;
  t.columns = {"word",         "W",                "naive_mean",      "clump_size",
               "predicted_mean", "atom_at_zero",   "conditional_mean", "conditional_sem",
               "ks_statistic"};
  for (const auto& word : words) {
    const int W = word.size();
    const double naive = std::pow(4.0, W) / W;
    const double clump = clump_size(word);
    Row row = {word.str(), num(W), num(naive), num(clump), num(naive * clump)};
    if (p.reps > 0) {
      const auto r = segment_sim(word, p, p.reps);
      row.insert(row.end(), {num(r.atom_at_zero), num(r.conditional_mean),
                             num(r.conditional_sem), num(ks_of(r))});
    } else {
      row.insert(row.end(), 4, Cell{});
    }
    t.add_row(std::move(row));
  }
  return t;
}

Table table5(const ResolvedParams& p) {
  const auto words = pick_words(p, kTable5Words, true);
  const std::size_t reps = replications(p);
  Table t;
  t.columns = {"word", "atom_at_zero", "conditional_mean", "conditional_sem", "ks_statistic",
               "generations", "years"};
  double rho1 = 0.0, rho2 = 0.0;
  for (const auto& word : words) {
    const auto r = killed_sim(word, p, reps);
    rho1 = r.rho1;
    rho2 = r.rho2;
    t.add_row({word.str(), num(r.summary.atom_at_zero), num(r.summary.conditional_mean),
               num(r.summary.conditional_sem), num(ks_of(r.summary)),
               num(r.conditional_generations), num(r.conditional_years)});
  }
  t.add_summary("rho1", rho1);
  t.add_summary("rho2", rho2);
  return t;
}

Table table6(const ResolvedParams& p) {
  Table t;
  t.columns = {"x"};
  int top = 0;
  std::vector<std::vector<double>> columns;
  for (int W : p.word_lengths) {
    t.columns.push_back("h_W" + std::to_string(W));
    columns.push_back(match_hitting_probabilities(W));
    top = std::max(top, W);
  }
  for (int x = 1; x < top; ++x) {
    Row row = {num(x)};
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (x < p.word_lengths[i]) {
        row.push_back(columns[i][static_cast<std::size_t>(x)]);
      } else {
        row.emplace_back();
      }
    }
    t.add_row(std::move(row));
  }
  return t;
}

Table table7(const ResolvedParams& p) {
  const int W = p.word_lengths.front();
  const auto chain = build_match_chain(W);
  Table t;
  t.columns = {"x"};
  std::vector<std::vector<double>> times;
  for (int y = W; y >= 1; --y) {
    t.columns.push_back("y" + std::to_string(y));
    times.push_back(expected_hitting_time(chain, static_cast<std::size_t>(y)));
  }
  for (int x = 0; x < W; ++x) {
    Row row = {num(x)};
    for (int y = W; y >= 1; --y) {
      if (x <= y) {
        row.push_back(times[static_cast<std::size_t>(W - y)][static_cast<std::size_t>(x)]);
      } else {
        row.emplace_back();
      }
    }
    t.add_row(std::move(row));
  }
  return t;
}

Table table8(const ResolvedParams& p) {
  const int W = p.word_lengths.front();
  const auto top = static_cast<std::size_t>(W);
  const auto chain = build_match_chain(W);
  const auto up = expected_hitting_time(condition_on_hitting(chain, top, 0), top);
  const auto down = expected_hitting_time(condition_on_hitting(chain, 0, top), 0);
  Table t;
  t.columns = {"x", "time_to_W_given_W_first", "time_to_0_given_0_first"};
  for (int x = W; x >= 0; --x) {
    const auto i = static_cast<std::size_t>(x);
    t.add_row({num(x), num(up[i]), num(down[i])});
  }
  return t;
}

void add_histogram(Table& t, const SimResult& r) {
  t.columns = {"bin_start", "count", "log_count"};
  std::vector<double> xs, ys;
  for (const auto& bin : r.histogram) {
    Cell log_count;
    if (bin.count > 0) log_count = std::log(static_cast<double>(bin.count));
    t.add_row({num(bin.start), num(bin.count), log_count});
    if (bin.count >= 10) {
      xs.push_back(static_cast<double>(bin.start));
      ys.push_back(std::log(static_cast<double>(bin.count)));
    }
  }
  t.add_summary("replications", num(static_cast<std::uint64_t>(r.replications)));
  t.add_summary("atom_at_zero", r.atom_at_zero);
  t.add_summary("conditional_mean", r.conditional_mean);
  t.add_summary("conditional_sem", r.conditional_sem);
  t.add_summary("ks_statistic", ks_of(r));
  if (xs.size() >= 3) {
    const auto fit = fit_line(xs, ys);
    t.add_summary("fit_slope", fit.slope);
    t.add_summary("fit_intercept", fit.intercept);
    t.add_summary("fit_r_squared", fit.r_squared);
  }
}

Table segment_figure(const ResolvedParams& p, const char* fallback) {
  const auto word = single_word(p, fallback);
  Table t;
  add_histogram(t, segment_sim(word, p, replications(p)));
  return t;
}

Table killed_figure(const ResolvedParams& p, const char* fallback) {
  const auto word = single_word(p, fallback);
  const auto r = killed_sim(word, p, replications(p));
  Table t;
  add_histogram(t, r.summary);
  t.add_summary("conditional_generations", r.conditional_generations);
  t.add_summary("conditional_years", r.conditional_years);
  return t;
}

Table scan(const ResolvedParams& p) {
  const int W = p.word_lengths.front();
  const auto s = scan_all_words(W, p.population.L, p.lambda, p.threads);
  Table t;
  t.columns = {"word", "b1", "b2", "tv_bound", "clump_size"};
  for (const auto& e : s.entries) {
    t.add_row({e.word.str(), num(e.b1), num(e.b2), num(e.tv_bound), num(e.clump_size)});
  }
  t.add_summary("words", num(static_cast<std::uint64_t>(s.entries.size())));
  t.add_summary("best", s.entries[s.best].word.str());
  t.add_summary("best_tv", s.entries[s.best].tv_bound);
  t.add_summary("worst", s.entries[s.worst].word.str());
  t.add_summary("worst_tv", s.entries[s.worst].tv_bound);
  return t;
}

Table approx3(const ResolvedParams& p, std::vector<std::string>& warnings) {
  Table t;
  t.columns = {"W",     "rho",       "from_two_away",        "mean_steps",
               "generations", "years", "quoted_billion_years", "regime_ok"};
  for (int W : p.word_lengths) {
    PopulationParams params = p.population;
    params.W = W;
    const auto e = approx3_expected_time(params, p.form);
    if (!e.regime_ok) {
      warnings.push_back("N^3 mu^2 = " +
                         format_number(std::pow(params.N, 3) * params.mu * params.mu) +
                         " is not small; the W=" + std::to_string(W) +
                         " estimate is unreliable");
    }
    // Converted from the step count rounded to 3 figures, the way it is quoted.
    const double quoted = round_significant(
        round_significant(e.mean_steps, 3) / (W * params.mu) * params.generation_years / 1e9, 3);
    t.add_row({num(W), num(e.rho), num(e.from_two_away), num(e.mean_steps),
               num(e.generations), num(e.years), num(quoted), num(e.regime_ok ? 1 : 0)});
  }
  return t;
}

Table headline(const ResolvedParams& p, std::vector<std::string>& warnings) {
  const auto& params = p.population;
  Table t;
  t.columns = {"quantity", "value"};
  double killed_mean = std::nan("");
  if (p.reps > 0) {
    const auto word = single_word(p, "ACAGCTGT");
    killed_mean = killed_sim(word, p, p.reps).summary.conditional_mean;
  }
  const auto h = headline_estimates(params, killed_mean);
  auto add = [&t](const char* name, double v) {
    t.add_row({std::string(name), std::isnan(v) ? Cell{} : Cell{v}});
  };
  add("single_match_minus_1_years", h.single_match_minus_1_years);
  add("six_letter_years", h.six_letter_years);
  add("no_match_years", h.no_match_years);
  add("seven_of_eight_years", h.seven_of_eight_years);
  add("em1_six", h.em1_six);
  add("em2_eight", h.em2_eight);
  add("killed_conditional_mean", killed_mean);

  const auto rhos = rho1_rho2(params);
  add("rho", rho(params));
  add("rho1", rhos.rho1);
  add("rho2", rhos.rho2);
  add("r", rhos.r);
  if (params.W >= 3) {
    const auto triple = triple_mutation_expectation(params);
    add("triple_mutation_per_interval", triple.per_interval);
    add("triple_mutation_visits", triple.visits);
    add("triple_mutation_total", triple.total);
  }
  const auto c = coalescent_quantities(params);
  add("tree_length", c.tree_length);
  add("tree_length_asymptotic", c.tree_length_asymptotic);
  add("expected_mutations_W", c.expected_mutations_W);
  add("expected_mutations_L", c.expected_mutations_L);
  add("site_frequency_mean_fraction", c.site_frequency_mean_fraction);
  const auto balance = lemma1_balance(6, params.L, c.expected_mutations_L,
                                      expected_almost_matches(6, 1024, 1),
                                      expected_almost_matches(6, 1024, 2));
  add("lemma1_disruption_W6", balance.disruption_rate);
  add("lemma1_creation_W6", balance.creation_rate);
  for (int W : {6, 8}) {
    PopulationParams a = params;
    a.W = W;
    const auto e = approx3_expected_time(a, p.form);
    if (!e.regime_ok) warnings.push_back("approx3 outside its regime for W=" + std::to_string(W));
    add(W == 6 ? "approx3_years_W6" : "approx3_years_W8", e.years);
  }
  return t;
}

// ---------------------------------------------------------------------------
// Self-test

struct Printed {
  double value;
  double unit;
};

/// "0.003782" -> value 0.003782, unit 1e-6.
Printed printed(const std::string& text) {
  const auto dot = text.find('.');
  const int decimals = dot == std::string::npos ? 0 : static_cast<int>(text.size() - dot - 1);
  return {std::stod(text), std::pow(10.0, -decimals)};
}

class SelfTest {
 public:
  explicit SelfTest(Table& t) : t_(t) {
    t_.columns = {"check", "computed", "expected", "pass"};
  }

  /// Matches the printed figure under rounding or under truncation.
  void against_printed(const std::string& name, double computed, const std::string& text) {
    const auto pr = printed(text);
    const double slack = 1e-9 * pr.unit;
    const bool rounded = std::abs(computed - pr.value) <= 0.5 * pr.unit + slack;
    const bool truncated = computed >= pr.value - slack && computed < pr.value + pr.unit;
    add(name, computed, pr.value, rounded || truncated);
  }

  void near(const std::string& name, double computed, double expected, double abs_tol) {
    add(name, computed, expected, std::abs(computed - expected) <= abs_tol);
  }

  void relative(const std::string& name, double computed, double expected, double rel_tol) {
    add(name, computed, expected, std::abs(computed - expected) <= rel_tol * std::abs(expected));
  }

  void below(const std::string& name, double computed, double limit) {
    add(name, computed, limit, computed < limit);
  }

  void same(const std::string& name, const std::string& computed, const std::string& expected) {
    t_.add_row({name, computed, expected, num(computed == expected ? 1 : 0)});
    failures_ += computed != expected;
  }

  int failures() const { return failures_; }

 private:
  void add(const std::string& name, double computed, double expected, bool pass) {
    t_.add_row({name, num(computed), num(expected), num(pass ? 1 : 0)});
    failures_ += !pass;
  }

  Table& t_;
  int failures_ = 0;
};

Table selftest() {
  Table t;
  SelfTest st(t);

  const auto s6 = chain_summary(6);
  const auto s8 = chain_summary(8);
  st.against_printed("table1.W6.E_pi_T_W", s6.mean_stationary, "4420");
  st.against_printed("table1.W6.E_0_T_W", s6.mean_from_zero, "4431");
  st.against_printed("table1.W6.clump_mean", s6.clump_mean_formula, "4456");
  st.against_printed("table1.W8.E_pi_T_W", s8.mean_stationary, "69088");
  st.against_printed("table1.W8.E_0_T_W", s8.mean_from_zero, "69104");
  st.against_printed("table1.W8.clump_mean", s8.clump_mean_formula, "69152");
  st.below("error_bound.W6", exponential_error_bound(6), 0.0011);
  st.below("error_bound.W8", exponential_error_bound(8), 0.0001);
  st.near("kac.W6", kac_return_time(match_stationary(6), 6), 4096, 1e-6);
  st.near("kac.W8", kac_return_time(match_stationary(8), 8), 65536, 1e-6);

  const std::vector<std::string> h6 = {"0.003782", "0.006051", "0.009455", "0.01966",
                                       "0.08093"};
  // The published h(1) for W=8 reads 0.0004334; the exact value is 0.00043334.
  const std::vector<std::string> h8 = {"0.0004333", "0.0006190", "0.0008047", "0.001139",
                                       "0.002141",  "0.007156",  "0.05228"};
  const auto hp6 = match_hitting_probabilities(6);
  const auto hp8 = match_hitting_probabilities(8);
  for (std::size_t x = 1; x <= h6.size(); ++x) {
    st.against_printed("table6.W6.h" + std::to_string(x), hp6[x], h6[x - 1]);
  }
  for (std::size_t x = 1; x <= h8.size(); ++x) {
    st.against_printed("table6.W8.h" + std::to_string(x), hp8[x], h8[x - 1]);
  }

  const std::vector<std::vector<std::string>> t7 = {
      {"69104.23", "3569.23", "449.66", "104.37", "36.91", "16.43", "7.71", "3.00"},
      {"69101.23", "3566.23", "446.66", "101.37", "33.91", "13.43", "4.71"},
      {"69096.51", "3561.51", "441.94", "96.66", "29.20", "8.71"},
      {"69087.80", "3552.80", "433.23", "87.94", "20.49"},
      {"69067.31", "3532.31", "412.74", "67.46"},
      {"68999.86", "3464.86", "345.29"},
      {"68654.57", "3119.57"},
      {"65535.00"}};
  const auto chain8 = build_match_chain(8);
  for (std::size_t x = 0; x < t7.size(); ++x) {
    for (std::size_t j = 0; j < t7[x].size(); ++j) {
      const std::size_t y = 8 - j;
      st.against_printed("table7.E" + std::to_string(x) + "_T" + std::to_string(y),
                         expected_hitting_time(chain8, y)[x], t7[x][j]);
    }
  }

  const std::vector<std::pair<std::string, std::string>> t8 = {
      {"0", "47.229002"},         {"2.156068", "46.229002"},  {"8.152877", "45.138092"},
      {"19.963106", "43.696338"}, {"31.794219", "41.811331"}, {"39.459771", "39.184505"},
      {"43.829002", "35.059746"}, {"46.229002", "26.937262"}, {"47.229002", "0"}};
  const auto up = expected_hitting_time(condition_on_hitting(chain8, 8, 0), 8);
  const auto down = expected_hitting_time(condition_on_hitting(chain8, 0, 8), 0);
  for (std::size_t i = 0; i < t8.size(); ++i) {
    const std::size_t x = 8 - i;
    st.against_printed("table8.up.x" + std::to_string(x), up[x], t8[i].first);
    st.against_printed("table8.down.x" + std::to_string(x), down[x], t8[i].second);
  }
  st.near("green.E0_N6_T7", greens_function(build_match_chain(8), 0, 6, 7), 12, 1e-9);
  st.near("green.E0_N5_T7", greens_function(build_match_chain(8), 0, 5, 7), 80, 1e-9);

  const std::vector<std::pair<std::string, std::string>> t2 = {
      {"ACACAC", "0.13281"}, {"ACAACA", "0.03320"}, {"ACGACG", "0.03125"},
      {"AACGAA", "0.00977"}, {"ACGTAC", "0.00781"}, {"ACGTCA", "0.00195"},
      {"ACGTAG", "0"}};
  // ACGTCA is published as 0.00193; 2 * 4^-5 = 0.001953.
  for (const auto& [word, value] : t2) {
    const auto r = initial_condition_bounds(DnaWord::parse(word), 1024);
    st.against_printed("table2." + word, r.b2 / r.lambda, value);
  }
  {
    const auto r = initial_condition_bounds(DnaWord::parse("ACGTAG"), 1024);
    st.against_printed("b1_over_gamma.W6", r.b1 / r.lambda, "0.00268");
  }

  const std::vector<std::pair<std::string, std::string>> t3 = {
      {"AACCGT", "0.134229"},   {"ACGCTA", "0.142948"},   {"ACAGCA", "0.183293"},
      {"AACGAA", "0.229230"},   {"ACAACA", "0.302622"},   {"ACACAC", "0.465964"},
      {"ACAGCTGT", "0.070616"}, {"ACAAGGGC", "0.075011"}, {"ACAGACAG", "0.100627"},
      {"AAAAAACA", "0.145996"}, {"AACAACAA", "0.163626"}, {"ACACACAC", "0.337132"}};
  for (const auto& [word, value] : t3) {
    st.against_printed("table3." + word, time_T_bounds(DnaWord::parse(word), 1024, 1).tv_bound,
                       value);
  }
  st.against_printed("b1.W6", time_T_bounds(DnaWord::parse("AACCGT"), 1024, 1).b1, "0.010742");
  st.against_printed("b1.W8", time_T_bounds(DnaWord::parse("ACAGCTGT"), 1024, 1).b1,
                     "0.014648");
  const auto scan8 = scan_all_words(8, 1024, 1, 0);
  st.same("scan.W8.best", scan8.entries[scan8.best].word.str(), "ACAGCTGT");
  st.same("scan.W8.worst", scan8.entries[scan8.worst].word.str(), "ACACACAC");
  st.against_printed("theorem2.W6", declumped_tv_bound(6, 1024, 1), "0.02593");
  st.against_printed("theorem2.W8", declumped_tv_bound(8, 1024, 1), "0.03580");
  st.near("EM1.W6", expected_almost_matches(6, 1024, 1), 4.5, 1e-12);
  st.near("EM2.W6", expected_almost_matches(6, 1024, 2), 33.75, 1e-12);
  st.near("EM1.W8", expected_almost_matches(8, 1024, 1), 0.375, 1e-12);
  st.near("EM2.W8", expected_almost_matches(8, 1024, 2), 3.9375, 1e-12);

  PopulationParams params;
  for (int W : {6, 8}) {
    params.W = W;
    const auto e = approx3_expected_time(params);
    const std::string w = std::to_string(W);
    st.relative("approx3.W" + w + ".E_pi_S", e.mean_steps, W == 6 ? 214 : 2300, 0.01);
    // Years as quoted, from the figure rounded to three significant digits.
    const double quoted_years = round_significant(e.mean_steps, 3) / (W * params.mu) *
                                params.generation_years / 1e9;
    st.against_printed("approx3.W" + w + ".billion_years", round_significant(quoted_years, 3),
                       W == 6 ? "89.2" : "719");
  }
  params.W = 8;
  st.near("rho.W8", rho(params), 1.0 / 19.0, 1e-12);
  const auto rhos = rho1_rho2(params);
  st.near("rho1", rhos.rho1, 20.0 / 23.0, 1e-12);
  st.relative("rho2", rhos.rho2, 4.0 / 9000.0, 1e-3);
  st.near("triple_mutation_total", triple_mutation_expectation(params).total, 4.44e-4, 1e-6);
  const auto h = headline_estimates(params, 0.0);
  st.near("single_match_minus_1_years", h.single_match_minus_1_years, 375000, 1e-6);
  st.near("eq9_years", h.six_letter_years, 107697, 1.0);
  st.near("eq10_years", h.seven_of_eight_years, 61560, 1.0);

  t.add_summary("failures", num(st.failures()));
  return t;
}

}  // namespace

bool selftest_failed(const Table& table) {
  const Cell* f = table.find_summary("failures");
  return f == nullptr || std::get<std::int64_t>(*f) != 0;
}

Table build_table(const std::string& command, const ResolvedParams& p,
                  std::vector<std::string>& warnings) {
  Table t;
  if (command == "table1") t = table1(p);
  else if (command == "table2") t = table2(p);
  else if (command == "table3") t = table3(p);
  else if (command == "table4") t = table4(p);
  else if (command == "table5") t = table5(p);
  else if (command == "table6") t = table6(p);
  else if (command == "table7") t = table7(p);
  else if (command == "table8") t = table8(p);
  else if (command == "fig1") t = segment_figure(p, "AACCGT");
  else if (command == "fig2") t = segment_figure(p, "ACACAC");
  else if (command == "fig3") t = killed_figure(p, "ACAGCTGT");
  else if (command == "fig4") t = killed_figure(p, "ACACACAC");
  else if (command == "scan") t = scan(p);
  else if (command == "approx3") t = approx3(p, warnings);
  else if (command == "headline") t = headline(p, warnings);
  else if (command == "selftest") t = selftest();
  else throw std::invalid_argument("unknown command " + command);

  t.command = command;
  std::vector<std::string> ws;
  for (int W : p.word_lengths) ws.push_back(std::to_string(W));
  const auto& pop = p.population;
  t.header = {
      {"seed", format_number(p.seed)},
      {"N", format_number(pop.N)},
      {"mu", format_number(pop.mu)},
      {"L", format_number(pop.L)},
      {"W", join(ws, " ")},
      {"words", join(p.words, " ")},
      {"reps", format_number(p.reps)},
      {"bin", format_number(p.bin)},
      {"lambda", format_number(p.lambda)},
      {"generation_years", format_number(pop.generation_years)},
      {"step_cap", format_number(p.step_cap)},
      {"form", p.form == StoppingForm::kPrinted ? "printed" : "first-step"},
  };
  return t;
}

}  // namespace wordwait::cli

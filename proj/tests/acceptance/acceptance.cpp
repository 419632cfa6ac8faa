// Reproduction checks against the published figures. One PASS/FAIL line per
// criterion, followed by indented detail lines.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "wordwait/format.hpp"
#include "wordwait/markov_core.hpp"
#include "wordwait/mutation_chain.hpp"
#include "wordwait/population.hpp"
#include "wordwait/sequence_sim.hpp"
#include "wordwait/word_stats.hpp"

using namespace wordwait;
using nlohmann::json;

namespace {

std::size_t g_reps = 100000;

struct Report {
  bool pass = true;
  std::vector<std::string> notes;

  void fail(std::string note) {
    pass = false;
    notes.push_back("miss: " + std::move(note));
  }
  void note(std::string text) { notes.push_back(std::move(text)); }
  void expect(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }
};

std::string fmt(double v) { return format_number(v); }

double unit_of(const std::string& text) {
  const auto dot = text.find('.');
  return dot == std::string::npos ? 1.0 : std::pow(10.0, -double(text.size() - dot - 1));
}

// Half a unit of the last printed digit.
bool rounds_to(double value, const std::string& text) {
  return std::abs(value - std::stod(text)) <= 0.5 * unit_of(text) * (1 + 1e-9);
}

bool truncates_to(double value, const std::string& text) {
  const double v = std::stod(text), u = unit_of(text);
  return value >= v - 1e-9 * u && value < v + u;
}

void printed(Report& r, const std::string& label, double value, const std::string& text) {
  if (rounds_to(value, text)) return;
  r.fail(label + ": computed " + fmt(value) + ", printed " + text +
         (truncates_to(value, text) ? " (printed figure is the truncation)" : ""));
}

// Half a unit in the 4th significant digit of the printed value.
void four_significant(Report& r, const std::string& label, double value, double shown) {
  const double unit = std::pow(10.0, std::floor(std::log10(shown)) - 3);
  if (std::abs(value - shown) <= 0.5 * unit * (1 + 1e-9)) return;
  const bool trunc = value >= shown && value < shown + unit;
  r.fail(label + ": computed " + fmt(value) + ", printed " + fmt(shown) +
         (trunc ? " (printed figure is the truncation)" : ""));
}

json run_json(std::vector<std::string> args) {
  args.insert(args.end(), {"--format", "json"});
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  if (code != 0) throw std::runtime_error("command failed: " + err.str());
  return json::parse(out.str());
}

std::map<std::string, json> rows_by_word(const json& doc) {
  std::map<std::string, json> rows;
  const auto& cols = doc["columns"];
  for (const auto& row : doc["rows"]) {
    json named;
    for (std::size_t c = 0; c < cols.size(); ++c) named[cols[c].get<std::string>()] = row[c];
    rows[row[0].get<std::string>()] = named;
  }
  return rows;
}

// ---------------------------------------------------------------------------

Report c1_table1() {
  Report r;
  const auto s6 = chain_summary(6), s8 = chain_summary(8);
  const std::vector<std::tuple<std::string, double, std::string>> checks = {
      {"W=6 E_pi T_W", s6.mean_stationary, "4420"},
      {"W=6 E_0 T_W", s6.mean_from_zero, "4431"},
      {"W=6 4^W/(1-a)", s6.clump_mean_formula, "4456"},
      {"W=8 E_pi T_W", s8.mean_stationary, "69088"},
      {"W=8 E_0 T_W", s8.mean_from_zero, "69104"},
      {"W=8 4^W/(1-a)", s8.clump_mean_formula, "69152"}};
  for (const auto& [label, value, text] : checks) printed(r, label, value, text);
  return r;
}

Report c2_table6() {
  Report r;
  const std::vector<double> w6 = {0.003782, 0.006051, 0.009455, 0.01966, 0.08093};
  const std::vector<double> w8 = {0.0004334, 0.0006190, 0.0008047, 0.001139,
                                  0.002141,  0.007156,  0.05228};
  const auto h6 = match_hitting_probabilities(6), h8 = match_hitting_probabilities(8);
  for (std::size_t x = 1; x <= w6.size(); ++x) {
    four_significant(r, "W=6 h(" + std::to_string(x) + ")", h6[x], w6[x - 1]);
  }
  for (std::size_t x = 1; x <= w8.size(); ++x) {
    four_significant(r, "W=8 h(" + std::to_string(x) + ")", h8[x], w8[x - 1]);
  }
  return r;
}

Report c3_tables7_8() {
  Report r;
  const std::vector<std::vector<std::string>> t7 = {
      {"69104.23", "3569.23", "449.66", "104.37", "36.91", "16.43", "7.71", "3.00"},
      {"69101.23", "3566.23", "446.66", "101.37", "33.91", "13.43", "4.71"},
      {"69096.51", "3561.51", "441.94", "96.66", "29.20", "8.71"},
      {"69087.80", "3552.80", "433.23", "87.94", "20.49"},
      {"69067.31", "3532.31", "412.74", "67.46"},
      {"68999.86", "3464.86", "345.29"},
      {"68654.57", "3119.57"},
      {"65535.00"}};
  const auto chain = build_match_chain(8);
  int count = 0;
  for (std::size_t x = 0; x < t7.size(); ++x) {
    for (std::size_t j = 0; j < t7[x].size(); ++j) {
      const std::size_t y = 8 - j;
      printed(r, "E_" + std::to_string(x) + " T_" + std::to_string(y),
              expected_hitting_time(chain, y)[x], t7[x][j]);
      ++count;
    }
  }
  const std::vector<std::pair<std::string, std::string>> t8 = {
      {"0", "47.229002"},         {"2.156068", "46.229002"},  {"8.152877", "45.138092"},
      {"19.963106", "43.696338"}, {"31.794219", "41.811331"}, {"39.459771", "39.184505"},
      {"43.829002", "35.059746"}, {"46.229002", "26.937262"}, {"47.229002", "0"}};
  const auto up = expected_hitting_time(condition_on_hitting(chain, 8, 0), 8);
  const auto down = expected_hitting_time(condition_on_hitting(chain, 0, 8), 0);
  for (std::size_t i = 0; i < t8.size(); ++i) {
    const std::size_t x = 8 - i;
    printed(r, "E_" + std::to_string(x) + "(T_8 | T_8 < T_0)", up[x], t8[i].first);
    printed(r, "E_" + std::to_string(x) + "(T_0 | T_0 < T_8)", down[x], t8[i].second);
    count += 2;
  }
  const double g12 = greens_function(chain, 0, 6, 7), g80 = greens_function(chain, 0, 5, 7);
  r.expect(std::abs(g12 - 12) < 1e-9, "Green's function E_0 N_6 = " + fmt(g12));
  r.expect(std::abs(g80 - 80) < 1e-9, "Green's function E_0 N_5 = " + fmt(g80));
  r.note(std::to_string(count) + " table entries, Green's values " + fmt(g12) + " and " +
         fmt(g80));
  return r;
}

Report c4_table2() {
  Report r;
  const std::vector<std::tuple<std::vector<int>, std::string, std::string>> rows = {
      {{2, 4}, "ACACAC", "0.13281"}, {{3, 5}, "ACAACA", "0.03320"},
      {{3}, "ACGACG", "0.03125"},    {{4, 5}, "AACGAA", "0.00977"},
      {{4}, "ACGTAC", "0.00781"},    {{5}, "ACGTCA", "0.00193"},
      {{}, "ACGTAG", "0"}};
  std::map<std::vector<int>, std::string> listed;
  for (const auto& [shifts, word, value] : rows) {
    const auto w = DnaWord::parse(word);
    r.expect(overlap_profile(w).self_overlap_shifts() == shifts, word + " has another overlap set");
    const auto b = initial_condition_bounds(w, 1024);
    printed(r, word, b.b2 / b.lambda, value);
    listed[shifts] = value;
  }
  // Every word of length 6: b2/gamma depends only on the overlap set.
  std::map<std::vector<int>, std::pair<double, std::size_t>> seen;
  std::size_t mismatched = 0;
  for (std::uint32_t code = 0; code < 4096; ++code) {
    const auto w = DnaWord::from_packed(code, 6);
    if (w.is_constant()) continue;
    const auto shifts = overlap_profile(w).self_overlap_shifts();
    const auto b = initial_condition_bounds(w, 1024);
    const double v = b.b2 / b.lambda;
    auto [it, fresh] = seen.try_emplace(shifts, v, 0);
    ++it->second.second;
    if (!fresh && std::abs(it->second.first - v) > 1e-15) ++mismatched;
  }
  r.expect(mismatched == 0, std::to_string(mismatched) + " words disagree with their category");
  for (const auto& [shifts, value] : listed) {
    const auto it = seen.find(shifts);
    if (it == seen.end()) {
      r.fail("no word has overlap set of " + value);
    } else if (!rounds_to(it->second.first, value)) {
      r.fail(std::to_string(it->second.second) + " words share the category printed as " + value +
             " with value " + fmt(it->second.first));
    }
  }
  std::ostringstream cats;
  for (const auto& [shifts, info] : seen) {
    cats << " {";
    for (std::size_t i = 0; i < shifts.size(); ++i) cats << (i ? "," : "") << shifts[i];
    cats << "}:" << info.second;
  }
  r.note("overlap sets over 4092 nonconstant words:" + cats.str());
  return r;
}

Report c5_table3() {
  Report r;
  const std::vector<std::pair<std::string, std::string>> rows = {
      {"AACCGT", "0.134229"},   {"ACGCTA", "0.142948"},   {"ACAGCA", "0.183293"},
      {"AACGAA", "0.229230"},   {"ACAACA", "0.302622"},   {"ACACAC", "0.465964"},
      {"ACAGCTGT", "0.070616"}, {"ACAAGGGC", "0.075011"}, {"ACAGACAG", "0.100627"},
      {"AAAAAACA", "0.145996"}, {"AACAACAA", "0.163626"}, {"ACACACAC", "0.337132"}};
  for (const auto& [word, tv] : rows) {
    printed(r, word, time_T_bounds(DnaWord::parse(word), 1024, 1.0).tv_bound, tv);
  }
  for (const auto& [W, best, worst] :
       {std::tuple{6, "AACCGT", "ACACAC"}, std::tuple{8, "ACAGCTGT", "ACACACAC"}}) {
    const auto scan = scan_all_words(W, 1024, 1.0);
    const auto& b = scan.entries[scan.best];
    const auto& w = scan.entries[scan.worst];
    r.expect(b.word.str() == best, "W=" + std::to_string(W) + " best is " + b.word.str());
    r.expect(w.word.str() == worst, "W=" + std::to_string(W) + " worst is " + w.word.str());
    r.note("W=" + std::to_string(W) + " scan of " + std::to_string(scan.entries.size()) +
           " words: best " + b.word.str() + " " + fmt(b.tv_bound) + ", worst " + w.word.str() +
           " " + fmt(w.tv_bound));
  }
  return r;
}

struct Table4Row {
  std::string word, mean, predicted, clump;
};

const std::vector<Table4Row> kTable4 = {
    {"AACCGT", "717.32", "770.97", "1.129"},   {"ACGCTA", "719.45", "773.65", "1.133"},
    {"ACAGCA", "729.49", "785.50", "1.150"},   {"AACGAA", "732.79", "797.97", "1.171"},
    {"AACAAC", "746.42", "823.96", "1.210"},   {"ACACAC", "806.85", "900.34", "1.318"},
    {"ACAGCTGT", "8674", "8704", "1.0624"},    {"ACAAGGGC", "8685", "8737", "1.0665"},
    {"ACAGACAG", "8722", "8881", "1.0841"},    {"AAAACAAA", "8825", "8874", "1.0832"},
    {"AACAACAA", "9013", "9106", "1.1116"},    {"ACACACAC", "9584", "10037", "1.2253"}};

json g_table4, g_table5;

Report c6_table4() {
  Report r;
  Report analytic;
  for (const auto& row : kTable4) {
    const auto w = DnaWord::parse(row.word);
    const double c = clump_size(w);
    printed(analytic, row.word + " clump size", c, row.clump);
    printed(analytic, row.word + " predicted mean", std::pow(4.0, w.size()) / w.size() * c,
            row.predicted);
  }
  for (auto& n : analytic.notes) r.notes.push_back("analytic " + n);
  r.pass = analytic.pass;

  const auto start = std::chrono::steady_clock::now();
  std::string words;
  for (const auto& row : kTable4) words += (words.empty() ? "" : ",") + row.word;
  g_table4 = run_json({"table4", "--reps", std::to_string(g_reps), "--words", words});
  const double minutes =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() / 60.0;
  const auto sim = rows_by_word(g_table4);
  double worst = 0.0;
  for (const auto& row : kTable4) {
    const double mean = sim.at(row.word)["conditional_mean"].get<double>();
    const double target = std::stod(row.mean);
    const double rel = std::abs(mean - target) / target;
    worst = std::max(worst, rel);
    r.expect(rel <= 0.02, "simulated " + row.word + " mean " + fmt(mean) + " vs " + row.mean);
    const double sem = sim.at(row.word)["conditional_sem"].get<double>();
    const double lo = sim.at(row.word)["naive_mean"].get<double>();
    const double hi = sim.at(row.word)["predicted_mean"].get<double>();
    r.expect(mean >= lo - 3 * sem && mean <= hi + 3 * sem,
             row.word + " mean " + fmt(mean) + " outside [" + fmt(lo) + ", " + fmt(hi) + "]");
  }
  r.note("simulated means at " + std::to_string(g_reps) + " reps: worst relative gap " +
         fmt(worst) + ", " + fmt(std::round(minutes * 100) / 100) + " min for all words");
  return r;
}

Report c7_table5() {
  Report r;
  const std::vector<std::tuple<std::string, double, double>> rows = {
      {"ACAGCTGT", 0.3199, 259.95}, {"ACAAGGGC", 0.3225, 260.51},
      {"ACAGACAG", 0.3174, 275.54}, {"AAAACAAA", 0.3116, 297.62},
      {"AACAACAA", 0.3030, 293.93}, {"ACACACAC", 0.2744, 329.70}};
  const auto start = std::chrono::steady_clock::now();
  g_table5 = run_json({"table5", "--reps", std::to_string(g_reps)});
  const double minutes =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() / 60.0;
  const auto sim = rows_by_word(g_table5);
  for (const auto& [word, atom, mean] : rows) {
    const double a = sim.at(word)["atom_at_zero"].get<double>();
    const double m = sim.at(word)["conditional_mean"].get<double>();
    r.expect(std::abs(a - atom) <= 0.01, word + " atom " + fmt(a) + " vs " + fmt(atom));
    r.expect(std::abs(m - mean) <= 0.03 * mean, word + " mean " + fmt(m) + " vs " + fmt(mean));
    r.note(word + ": atom " + fmt(std::round(a * 1e4) / 1e4) + ", mean " +
           fmt(std::round(m * 100) / 100));
  }
  r.note(fmt(std::round(minutes * 100) / 100) + " min for six words");
  return r;
}

Report c8_approx3() {
  Report r;
  const auto doc = run_json({"approx3"});
  for (const auto& row : doc["rows"]) {
    const int W = row[0].get<int>();
    const double steps = row[3].get<double>();
    const double quoted = row[6].get<double>();
    const double target = W == 6 ? 214 : 2300;
    r.expect(std::abs(steps - target) <= 0.01 * target,
             "W=" + std::to_string(W) + " E_pi S = " + fmt(steps));
    const std::string years = W == 6 ? "89.2" : "719";
    r.expect(format_number(quoted) == years,
             "W=" + std::to_string(W) + " prints " + fmt(quoted) + " billion years");
    r.note("W=" + std::to_string(W) + ": E_pi S " + fmt(steps) + ", " + fmt(quoted) +
           " billion years (unrounded " + fmt(row[5].get<double>() / 1e9) + ")");
  }
  return r;
}

Report c9_headline() {
  Report r;
  PopulationParams p;
  p.W = 8;
  const auto h = headline_estimates(p, 0.0);
  r.expect(std::abs(h.six_letter_years - 107697) <= 1, "six-letter " + fmt(h.six_letter_years));
  r.expect(std::abs(h.seven_of_eight_years - 61560) <= 1,
           "seven-of-eight " + fmt(h.seven_of_eight_years));
  const auto s = rho1_rho2(p);
  r.expect(std::abs(s.rho1 - 20.0 / 23.0) < 1e-12, "rho1 " + fmt(s.rho1));
  r.expect(std::abs(s.rho2 - 4.0 / 9000.0) < 1e-3 * 4.0 / 9000.0, "rho2 " + fmt(s.rho2));
  r.expect(std::abs(rho(p) - 1.0 / 19.0) < 1e-12, "rho " + fmt(rho(p)));
  const double triple = triple_mutation_expectation(p).total;
  r.expect(std::abs(triple - 4.44e-4) <= 1e-6, "triple mutation " + fmt(triple));
  r.note("six-letter " + fmt(h.six_letter_years) + " y, seven-of-eight " +
         fmt(h.seven_of_eight_years) + " y, rho2 " + fmt(s.rho2) + ", triple " + fmt(triple));
  return r;
}

Report c10_moran() {
  Report r;
  const long long N = 50;
  const auto sim = moran_excursion_simulate(N, 100000, 1);
  std::size_t state_checks = 0, state_misses = 0;
  for (const auto* s : {&sim.loss, &sim.fixation}) {
    const auto exact = moran_excursion_births(N, s->condition);
    const char* tag = s->condition == Excursion::kLoss ? "loss" : "fixation";
    const double z = (s->mean_births - exact.mean_births) / s->births_sem;
    r.expect(std::abs(z) <= 3, std::string(tag) + " births z = " + fmt(z));
    for (long long k = 1; k < 2 * N; ++k) {
      const auto i = static_cast<std::size_t>(k);
      ++state_checks;
      const double gap = std::abs(s->per_state_visits[i] - exact.per_state_visits[i]);
      if (gap > 3 * s->per_state_sem[i]) {
        ++state_misses;
        r.fail(std::string(tag) + " visits to " + std::to_string(k) + " off by " +
               fmt(gap / s->per_state_sem[i]) + " sigma");
      }
    }
    r.note(std::string(tag) + ": " + std::to_string(s->count) + " excursions, births " +
           fmt(s->mean_births) + " vs exact " + fmt(exact.mean_births) + " (z " + fmt(z) + ")");
  }
  r.note(std::to_string(state_checks - state_misses) + "/" + std::to_string(state_checks) +
         " per-state visit means within 3 sigma");
  const auto loss = moran_excursion_births(500, Excursion::kLoss);
  const auto fix = moran_excursion_births(500, Excursion::kFixation);
  const double rl = loss.mean_births / loss.asymptote, rf = fix.mean_births / fix.asymptote;
  r.expect(std::abs(rl - 1) <= 0.02, "N=500 loss ratio " + fmt(rl));
  r.expect(std::abs(rf - 1) <= 0.02, "N=500 fixation ratio " + fmt(rf));
  // Ten times more excursions, reported only: separates bias from the
  // multiple-comparison spread of 198 simultaneous 3 sigma checks.
  const auto big = moran_excursion_simulate(N, 1000000, 2);
  double worst = 0.0;
  std::size_t big_misses = 0;
  for (const auto* s : {&big.loss, &big.fixation}) {
    const auto exact = moran_excursion_births(N, s->condition);
    for (long long k = 1; k < 2 * N; ++k) {
      const auto i = static_cast<std::size_t>(k);
      const double z = std::abs(s->per_state_visits[i] - exact.per_state_visits[i]) /
                       s->per_state_sem[i];
      worst = std::max(worst, z);
      big_misses += z > 3;
    }
  }
  r.note("at 10^6 excursions (seed 2): " + std::to_string(big_misses) +
         " per-state misses, largest " + fmt(std::round(worst * 100) / 100) + " sigma");
  r.note("N=500 ratios to N and 2N^2: " + fmt(rl) + ", " + fmt(rf));
  return r;
}

Report c11_distributions() {
  Report r;
  double worst = 0.0;
  for (const auto* doc : {&g_table4, &g_table5}) {
    for (const auto& [word, row] : rows_by_word(*doc)) {
      const double ks = row["ks_statistic"].get<double>();
      worst = std::max(worst, ks);
      r.expect(ks < 0.02, word + " KS " + fmt(ks));
    }
  }
  r.note("largest KS " + fmt(worst));
  for (const char* word : {"AACCGT", "ACGCTA", "ACGTAG", "AACGAA", "ACGTCA"}) {
    const auto d = initial_match_distribution(DnaWord::parse(word), 1024, g_reps, 1);
    r.expect(d.tv_to_poisson <= 0.0063 + d.sampling_slack,
             std::string(word) + " initial TV " + fmt(d.tv_to_poisson));
    r.note(std::string(word) + " initial-match TV " + fmt(d.tv_to_poisson) + " (slack " +
           fmt(d.sampling_slack) + ")");
  }
  return r;
}

Report c12_determinism() {
  Report r;
  const std::string reps = std::to_string(std::min<std::size_t>(g_reps, 2000));
  for (const auto& name : cli::command_names()) {
    std::string bytes[2];
    int codes[2];
    const char* threads[2] = {"1", "3"};
    for (int i = 0; i < 2; ++i) {
      std::ostringstream out, err;
      codes[i] = cli::run({name, "--reps", reps, "--seed", "12345", "--threads", threads[i]},
                          out, err);
      bytes[i] = out.str();
    }
    r.expect(codes[0] == 0 && codes[0] == codes[1], name + " exit codes " +
                                                        std::to_string(codes[0]) + "/" +
                                                        std::to_string(codes[1]));
    r.expect(bytes[0] == bytes[1], name + " output differs between 1 and 3 threads");
  }
  r.note("all " + std::to_string(cli::command_names().size()) + " subcommands at --reps " +
         reps + ", threads 1 vs 3");
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--reps" && i + 1 < argc) {
      g_reps = std::stoull(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--reps N]\n";
      return 1;
    }
  }
  const std::vector<std::pair<std::string, std::function<Report()>>> criteria = {
      {"Table 1 hitting times", c1_table1},
      {"Table 6 hitting probabilities", c2_table6},
      {"Tables 7-8 and Green's function", c3_tables7_8},
      {"Table 2 overlap categories", c4_table2},
      {"Table 3 tv bounds and scans", c5_table3},
      {"Table 4 clump sizes and simulated means", c6_table4},
      {"Table 5 killed-chain simulation", c7_table5},
      {"stopping-time estimate", c8_approx3},
      {"headline estimates", c9_headline},
      {"Moran excursion sums", c10_moran},
      {"exponential and Poisson fits", c11_distributions},
      {"thread-count determinism", c12_determinism}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Report r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r.fail(std::string("exception: ") + e.what());
    }
    failed += !r.pass;
    std::cout << (r.pass ? "PASS " : "FAIL ") << i + 1 << " " << criteria[i].first << "\n";
    for (const auto& n : r.notes) std::cout << "    " << n << "\n";
    std::cout.flush();
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}

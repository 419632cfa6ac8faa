#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "wordwait/dna_word.hpp"
#include "wordwait/sequence_sim.hpp"

namespace wordwait::cli {

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {
      "table1", "table2", "table3", "table4", "table5", "table6", "table7",
      "table8", "fig1",   "fig2",   "fig3",   "fig4",   "scan",   "approx3",
      "headline", "selftest"};
  return names;
}

namespace {

const std::map<std::string, std::string>& command_help() {
  static const std::map<std::string, std::string> help = {
      {"table1", "mean waiting times of the match-count chain"},
      {"table2", "b2/gamma by self-overlap category"},
      {"table3", "total variation bounds at time T"},
      {"table4", "clump sizes and simulated segment waiting times"},
      {"table5", "killed fixation chain simulation"},
      {"table6", "hitting probabilities h(x)"},
      {"table7", "expected hitting times E_x T_y"},
      {"table8", "hitting times of the conditioned chains"},
      {"fig1", "waiting-time histogram, segment simulation (AACCGT)"},
      {"fig2", "waiting-time histogram, segment simulation (ACACAC)"},
      {"fig3", "killed-chain histogram (ACAGCTGT)"},
      {"fig4", "killed-chain histogram (ACACACAC)"},
      {"scan", "bounds for every nonconstant word of length W"},
      {"approx3", "expected fixations until one letter away"},
      {"headline", "population waiting-time estimates in years"},
      {"selftest", "fast analytic checks against published values"},
  };
  return help;
}

bool is_segment_command(const std::string& c) {
  return c == "table2" || c == "table3" || c == "table4" || c == "scan" || c == "fig1" ||
         c == "fig2" || c == "table1" || c == "table6" || c == "table7" ||
         c == "table8" || c == "selftest";
}

bool is_simulation_command(const std::string& c) {
  return c == "table4" || c == "table5" || c == "fig1" || c == "fig2" || c == "fig3" ||
         c == "fig4" || c == "headline";
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

template <class T>
T parse_value(const std::string& key, const std::string& text) {
  T value{};
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, value);
  if (res.ec != std::errc() || res.ptr != end) {
    throw std::invalid_argument("config: bad value for " + key + ": '" + text + "'");
  }
  return value;
}

template <class T>
void set_if_unset(std::optional<T>& slot, const std::string& key, const std::string& text) {
  if (!slot) slot = parse_value<T>(key, text);
}

void set_text_if_unset(std::optional<std::string>& slot, const std::string& text) {
  if (!slot) slot = text;
}

std::vector<std::string> split_words(const std::string& text) {
  std::vector<std::string> words;
  std::string current;
  for (char c : text) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!current.empty()) words.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

}  // namespace

void apply_config_file(const std::string& path, RunConfig& config) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file " + path);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(number) +
                                  ": expected key=value");
    }
    const std::string key = trim(std::string_view(text).substr(0, eq));
    const std::string value = trim(std::string_view(text).substr(eq + 1));
    if (key == "N") set_if_unset(config.N, key, value);
    else if (key == "mu") set_if_unset(config.mu, key, value);
    else if (key == "L") set_if_unset(config.L, key, value);
    else if (key == "W") set_if_unset(config.W, key, value);
    else if (key == "reps") set_if_unset(config.reps, key, value);
    else if (key == "seed") set_if_unset(config.seed, key, value);
    else if (key == "bin") set_if_unset(config.bin, key, value);
    else if (key == "lambda") set_if_unset(config.lambda, key, value);
    else if (key == "generation_years") set_if_unset(config.generation_years, key, value);
    else if (key == "step_cap") set_if_unset(config.step_cap, key, value);
    else if (key == "threads") set_if_unset(config.threads, key, value);
    else if (key == "form") set_text_if_unset(config.form, value);
    else if (key == "out") set_text_if_unset(config.out, value);
    else if (key == "format") set_text_if_unset(config.format, value);
    else if (key == "words") {
      if (config.words.empty()) config.words = split_words(value);
    } else {
      throw std::invalid_argument("config line " + std::to_string(number) +
                                  ": unknown key '" + key + "'");
    }
  }
}

ResolvedParams resolve(const RunConfig& config) {
  const std::string& c = config.command;
  ResolvedParams p;
  auto& pop = p.population;
  if (config.N) pop.N = *config.N;
  if (config.mu) pop.mu = *config.mu;
  if (config.generation_years) pop.generation_years = *config.generation_years;
  pop.L = config.L ? *config.L : (is_segment_command(c) ? 1024.0 : 1000.0);
  if (config.W) pop.W = *config.W;
  pop.validate();

  p.seed = config.seed.value_or(1);
  p.reps = config.reps.value_or(is_simulation_command(c) ? 100'000 : 0);
  const bool fixation_bins = c == "table5" || c == "fig3" || c == "fig4";
  p.bin = config.bin.value_or(fixation_bins ? 10 : 100);
  p.lambda = config.lambda.value_or(1.0);
  p.step_cap = config.step_cap.value_or(kDefaultStepCap);
  p.threads = config.threads.value_or(0);
  if (p.bin < 1) throw std::invalid_argument("--bin must be >= 1");
  if (!(p.lambda > 0.0)) throw std::invalid_argument("--lambda must be positive");
  if (p.step_cap < 1) throw std::invalid_argument("step cap must be >= 1");

  const std::string form = config.form.value_or("printed");
  if (form == "printed") {
    p.form = StoppingForm::kPrinted;
  } else if (form == "first-step") {
    p.form = StoppingForm::kFirstStep;
  } else {
    throw std::invalid_argument("form must be printed or first-step");
  }
  if (config.format && *config.format != "csv" && *config.format != "json") {
    throw std::invalid_argument("format must be csv or json");
  }

  for (const auto& w : config.words) p.words.push_back(DnaWord::parse(w).str());
  if (config.W) {
    p.word_lengths = {*config.W};
  } else if (c == "table1" || c == "table6" || c == "approx3") {
    p.word_lengths = {6, 8};
  } else if (c == "table2") {
    p.word_lengths = {6};
  } else {
    p.word_lengths = {8};
  }
  if (config.W) {
    for (const auto& w : p.words) {
      if (static_cast<int>(w.size()) != *config.W) {
        throw std::invalid_argument("word " + w + " does not have length W=" +
                                    std::to_string(*config.W));
      }
    }
  }
  return p;
}

namespace {

void add_options(CLI::App* sub, RunConfig& cfg, std::optional<std::string>& config_path) {
  sub->add_option("--N", cfg.N, "diploid population size (default 10000)");
  sub->add_option("--mu", cfg.mu, "mutation probability per site per generation (default 1e-8)");
  sub->add_option("--L", cfg.L, "segment length (1024 for segment runs, 1000 for population runs)");
  sub->add_option("--W", cfg.W, "word length");
  sub->add_option("--reps", cfg.reps, "Monte Carlo replications (default 100000, 0 skips)");
  sub->add_option("--seed", cfg.seed, "master seed (default 1)");
  sub->add_option("--bin", cfg.bin, "histogram bin width");
  sub->add_option("--lambda", cfg.lambda, "expected occurrence count at time T (default 1)");
  sub->add_option("--generation-years", cfg.generation_years, "years per generation (default 25)");
  sub->add_option("--step-cap", cfg.step_cap, "steps allowed per replication");
  sub->add_option("--form", cfg.form, "stopping-time form: printed or first-step");
  sub->add_option("--out", cfg.out, "output file (default stdout)");
  sub->add_option("--format", cfg.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--threads", cfg.threads, "worker threads (0 = all cores)");
  sub->add_option("--words", cfg.words, "target words")->delimiter(',');
  sub->add_option("--word", cfg.words, "target word");
  sub->add_option("--config", config_path, "key=value parameter file");
}

}  // namespace

namespace {

std::optional<std::string> non_finite_column(const Table& table) {
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      const auto* d = std::get_if<double>(&row[c]);
      if (d && !std::isfinite(*d)) return table.columns[c];
    }
  }
  for (const auto& [key, cell] : table.summary) {
    const auto* d = std::get_if<double>(&cell);
    if (d && !std::isfinite(*d)) return "summary." + key;
  }
  return std::nullopt;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Waiting times for DNA words at a locus, in a segment and in a population",
               "wordwait"};
  app.require_subcommand(1, 1);
  RunConfig cfg;
  std::optional<std::string> config_path;
  const auto& help = command_help();
  for (const auto& name : command_names()) {
    add_options(app.add_subcommand(name, help.at(name)), cfg, config_path);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    app.exit(e, err, err);
    return kExitUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  ResolvedParams params;
  try {
    if (config_path) apply_config_file(*config_path, cfg);
    params = resolve(cfg);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  Table table;
  std::vector<std::string> warnings;
  try {
    table = build_table(cfg.command, params, warnings);
  } catch (const StepCapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitStepCap;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  }
  for (const auto& w : warnings) err << "warning: " << w << '\n';

  const Format format = cfg.format.value_or("csv") == "json" ? Format::kJson : Format::kCsv;
  if (cfg.out) {
    std::ofstream file(*cfg.out, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << *cfg.out << '\n';
      return kExitUsage;
    }
    write_table(table, format, file);
    if (!file) {
      err << "error: failed writing " << *cfg.out << '\n';
      return kExitUsage;
    }
  } else {
    write_table(table, format, out);
  }

  if (cfg.command == "selftest" && selftest_failed(table)) {
    err << "selftest failed\n";
    return kExitNumerical;
  }
  if (const auto column = non_finite_column(table)) {
    err << "numerical error: non-finite value in column " << *column << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace wordwait::cli

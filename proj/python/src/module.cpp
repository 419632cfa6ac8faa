#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"
#include "wordwait/markov_core.hpp"
#include "wordwait/mutation_chain.hpp"
#include "wordwait/population.hpp"
#include "wordwait/sequence_sim.hpp"
#include "wordwait/word_stats.hpp"

namespace py = pybind11;
using namespace wordwait;

namespace {

DnaWord word_of(const std::string& text) { return DnaWord::parse(text); }

py::dict chen_stein_dict(const ChenSteinReport& r) {
  py::dict d;
  d["lambda"] = r.lambda;
  d["b1"] = r.b1;
  d["b2"] = r.b2;
  d["tv_bound"] = r.tv_bound;
  d["clump_size"] = r.clump_size;
  d["q0"] = r.q0;
  d["q"] = r.q;
  d["s_overlap"] = r.s_overlap;
  return d;
}

py::dict sim_dict(const SimResult& r) {
  py::dict d;
  d["replications"] = r.replications;
  d["seed"] = r.seed;
  d["atom_at_zero"] = r.atom_at_zero;
  d["conditional_mean"] = r.conditional_mean;
  d["conditional_sem"] = r.conditional_sem;
  d["bin_width"] = r.bin_width;
  d["samples"] = py::array_t<std::uint64_t>(static_cast<py::ssize_t>(r.samples.size()),
                                            r.samples.data());
  py::list bins;
  for (const auto& b : r.histogram) bins.append(py::make_tuple(b.start, b.count));
  d["histogram"] = bins;
  return d;
}

py::dict excursion_dict(const ExcursionStats& s) {
  py::dict d;
  d["condition"] = s.condition == Excursion::kLoss ? "loss" : "fixation";
  d["mean_births"] = s.mean_births;
  d["asymptote"] = s.asymptote;
  d["per_state_visits"] = s.per_state_visits;
  d["count"] = s.count;
  d["births_sem"] = s.births_sem;
  d["per_state_sem"] = s.per_state_sem;
  return d;
}

Excursion excursion_of(const std::string& name) {
  if (name == "loss") return Excursion::kLoss;
  if (name == "fixation") return Excursion::kFixation;
  throw std::invalid_argument("condition must be 'loss' or 'fixation'");
}

PopulationParams population(double N, double mu, int W, double L, double years) {
  PopulationParams p;
  p.N = N;
  p.mu = mu;
  p.W = W;
  p.L = L;
  p.generation_years = years;
  p.validate();
  return p;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Waiting times for DNA words under mutation";

  py::register_exception<StepCapExceeded>(m, "StepCapExceeded", PyExc_RuntimeError);

  py::class_<BirthDeathChain>(m, "BirthDeathChain")
      .def(py::init(&BirthDeathChain::from_rates), py::arg("up"), py::arg("down"))
      .def_readonly("up", &BirthDeathChain::up)
      .def_readonly("down", &BirthDeathChain::down)
      .def_readonly("stay", &BirthDeathChain::stay)
      .def("__len__", &BirthDeathChain::size);

  m.def("hitting_probability", &hitting_probability, py::arg("chain"), py::arg("lower"),
        py::arg("upper"));
  m.def("expected_hitting_time", &expected_hitting_time, py::arg("chain"), py::arg("target"));
  m.def("greens_function", &greens_function, py::arg("chain"), py::arg("start"),
        py::arg("at"), py::arg("stop"));
  m.def("condition_on_hitting", &condition_on_hitting, py::arg("chain"), py::arg("target"),
        py::arg("avoid"));
  m.def("stationary_distribution", &stationary_distribution, py::arg("chain"));

  m.def("build_match_chain", &build_match_chain, py::arg("W"));
  m.def("match_stationary", &match_stationary, py::arg("W"));
  m.def("match_hitting_probabilities", &match_hitting_probabilities, py::arg("W"));
  m.def(
      "chain_summary",
      [](int W) {
        const auto s = chain_summary(W);
        py::dict d;
        d["W"] = s.W;
        d["a"] = s.a;
        d["mean_from_zero"] = s.mean_from_zero;
        d["mean_stationary"] = s.mean_stationary;
        d["clump_mean_formula"] = s.clump_mean_formula;
        d["relaxation_time"] = s.relaxation_time;
        d["exponential_error_bound"] = exponential_error_bound(W);
        return d;
      },
      py::arg("W"));

  m.def(
      "overlap_shifts",
      [](const std::string& w) { return overlap_profile(word_of(w)).self_overlap_shifts(); },
      py::arg("word"));
  m.def(
      "is_repetitive", [](const std::string& w) { return is_repetitive(word_of(w)); },
      py::arg("word"));
  m.def(
      "initial_condition_bounds",
      [](const std::string& w, double L) {
        return chen_stein_dict(initial_condition_bounds(word_of(w), L));
      },
      py::arg("word"), py::arg("L") = 1024.0);
  m.def(
      "time_T_bounds",
      [](const std::string& w, double L, double lambda) {
        return chen_stein_dict(time_T_bounds(word_of(w), L, lambda));
      },
      py::arg("word"), py::arg("L") = 1024.0, py::arg("lambda_") = 1.0);
  m.def(
      "clump_size", [](const std::string& w) { return clump_size(word_of(w)); },
      py::arg("word"));
  m.def("declumped_tv_bound", &declumped_tv_bound, py::arg("W"), py::arg("L"),
        py::arg("lambda_bar"));
  m.def("expected_almost_matches", &expected_almost_matches, py::arg("W"), py::arg("L"),
        py::arg("mismatches"));
  m.def(
      "scan_all_words",
      [](int W, double L, double lambda, unsigned threads) {
        WordScan scan;
        {
          py::gil_scoped_release release;
          scan = scan_all_words(W, L, lambda, threads);
        }
        py::dict d;
        d["count"] = scan.entries.size();
        d["best"] = scan.entries[scan.best].word.str();
        d["best_tv"] = scan.entries[scan.best].tv_bound;
        d["worst"] = scan.entries[scan.worst].word.str();
        d["worst_tv"] = scan.entries[scan.worst].tv_bound;
        return d;
      },
      py::arg("W"), py::arg("L") = 1024.0, py::arg("lambda_") = 1.0, py::arg("threads") = 0);

  m.def(
      "simulate_segment_waiting",
      [](const std::string& w, std::size_t L, std::size_t reps, std::uint64_t seed,
         std::uint64_t bin, unsigned threads, std::uint64_t step_cap) {
        SimConfig c;
        c.word = word_of(w);
        c.L = L;
        c.replications = reps;
        c.master_seed = seed;
        c.bin_width = bin;
        c.threads = threads;
        c.step_cap = step_cap;
        SimResult r;
        {
          py::gil_scoped_release release;
          r = simulate_segment_waiting(c);
        }
        return sim_dict(r);
      },
      py::arg("word"), py::arg("L") = 1024, py::arg("reps") = 100000, py::arg("seed") = 1,
      py::arg("bin") = 100, py::arg("threads") = 0, py::arg("step_cap") = kDefaultStepCap);

  m.def(
      "killed_fixation_chain",
      [](const std::string& w, double N, double mu, double L, std::size_t reps,
         std::uint64_t seed, std::uint64_t bin, unsigned threads) {
        const auto p = population(N, mu, w.size(), L, 25);
        KilledChainOptions o;
        o.bin_width = bin;
        o.threads = threads;
        KilledChainResult r;
        {
          py::gil_scoped_release release;
          r = killed_fixation_chain_sim(word_of(w), p, reps, seed, o);
        }
        py::dict d = sim_dict(r.summary);
        d["rho1"] = r.rho1;
        d["rho2"] = r.rho2;
        d["conditional_generations"] = r.conditional_generations;
        d["conditional_years"] = r.conditional_years;
        return d;
      },
      py::arg("word"), py::arg("N") = 1e4, py::arg("mu") = 1e-8, py::arg("L") = 1000.0,
      py::arg("reps") = 100000, py::arg("seed") = 1, py::arg("bin") = 10,
      py::arg("threads") = 0);

  m.def(
      "moran_excursion_births",
      [](long long N, const std::string& condition) {
        return excursion_dict(moran_excursion_births(N, excursion_of(condition)));
      },
      py::arg("N"), py::arg("condition"));
  m.def(
      "moran_excursion_simulate",
      [](long long N, std::size_t reps, std::uint64_t seed, unsigned threads) {
        MoranSimulation s;
        {
          py::gil_scoped_release release;
          s = moran_excursion_simulate(N, reps, seed, threads);
        }
        py::dict d;
        d["replications"] = s.replications;
        d["seed"] = s.seed;
        d["fixation_fraction"] = s.fixation_fraction;
        d["loss"] = excursion_dict(s.loss);
        d["fixation"] = excursion_dict(s.fixation);
        return d;
      },
      py::arg("N"), py::arg("reps"), py::arg("seed") = 1, py::arg("threads") = 0);

  m.def(
      "approx3",
      [](int W, double N, double mu, const std::string& form) {
        if (form != "printed" && form != "first-step") {
          throw std::invalid_argument("form must be 'printed' or 'first-step'");
        }
        const auto e = approx3_expected_time(
            population(N, mu, W, 1000, 25),
            form == "printed" ? StoppingForm::kPrinted : StoppingForm::kFirstStep);
        py::dict d;
        d["rho"] = e.rho;
        d["from_two_away"] = e.from_two_away;
        d["per_state"] = e.per_state;
        d["mean_steps"] = e.mean_steps;
        d["generations"] = e.generations;
        d["years"] = e.years;
        d["regime_ok"] = e.regime_ok;
        return d;
      },
      py::arg("W"), py::arg("N") = 1e4, py::arg("mu") = 1e-8, py::arg("form") = "printed");
  m.def(
      "rho1_rho2",
      [](double N, double mu, double L) {
        const auto s = rho1_rho2(population(N, mu, 8, L, 25));
        return py::make_tuple(s.rho1, s.rho2);
      },
      py::arg("N") = 1e4, py::arg("mu") = 1e-8, py::arg("L") = 1000.0);
  m.def(
      "headline",
      [](double killed_conditional_mean, double N, double mu, double L) {
        const auto h = headline_estimates(population(N, mu, 8, L, 25), killed_conditional_mean);
        py::dict d;
        d["single_match_minus_1_years"] = h.single_match_minus_1_years;
        d["six_letter_years"] = h.six_letter_years;
        d["no_match_years"] = h.no_match_years;
        d["seven_of_eight_years"] = h.seven_of_eight_years;
        d["em1_six"] = h.em1_six;
        d["em2_eight"] = h.em2_eight;
        return d;
      },
      py::arg("killed_conditional_mean"), py::arg("N") = 1e4, py::arg("mu") = 1e-8,
      py::arg("L") = 1000.0);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = cli::run(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}

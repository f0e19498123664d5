#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "fpr/algorithms.hpp"
#include "fpr/assign.hpp"
#include "fpr/datagen.hpp"
#include "fpr/exact.hpp"
#include "fpr/experiment.hpp"
#include "fpr/io.hpp"

namespace py = pybind11;
using namespace fpr;

PYBIND11_MODULE(_fpr, m) {
  m.doc() = "Monroe and Chamberlin-Courant committee selection";

  py::register_exception<SizeLimitError>(m, "SizeLimitError");

  py::enum_<Rule>(m, "Rule")
      .value("monroe", Rule::kMonroe)
      .value("cc", Rule::kCC);

  py::enum_<Algorithm>(m, "Algorithm")
      .value("a", Algorithm::kA)
      .value("b", Algorithm::kB)
      .value("c", Algorithm::kC)
      .value("gm", Algorithm::kGM)
      .value("p", Algorithm::kP)
      .value("r", Algorithm::kR)
      .value("exact", Algorithm::kExact);

  py::class_<PreferenceProfile>(m, "PreferenceProfile")
      .def(py::init<int, std::vector<std::vector<int>>, std::vector<std::string>>(),
           py::arg("m"), py::arg("rankings"), py::arg("labels") = std::vector<std::string>{})
      .def_property_readonly("m", &PreferenceProfile::alternative_count)
      .def_property_readonly("n", &PreferenceProfile::agent_count)
      .def("position", &PreferenceProfile::position, py::arg("agent"), py::arg("alt"))
      .def("ranking", &PreferenceProfile::ranking, py::arg("agent"))
      .def_property_readonly("labels", &PreferenceProfile::labels)
      .def("__eq__", [](const PreferenceProfile& a, const PreferenceProfile& b) { return a == b; })
      .def("__repr__", [](const PreferenceProfile& p) {
        std::ostringstream out;
        out << "PreferenceProfile(m=" << p.alternative_count() << ", n=" << p.agent_count()
            << ")";
        return out.str();
      });

  py::class_<ScoringFunction>(m, "ScoringFunction")
      .def(py::init<std::vector<Satisfaction>>(), py::arg("alpha"))
      .def_static("borda", &ScoringFunction::borda, py::arg("m"))
      .def_property_readonly("values", &ScoringFunction::values)
      .def("is_borda", &ScoringFunction::is_borda)
      .def("at", &ScoringFunction::at, py::arg("rank"));

  py::class_<Assignment>(m, "Assignment")
      .def_readonly("rule", &Assignment::rule)
      .def_readonly("k", &Assignment::committee_size)
      .def_readonly("rep", &Assignment::rep)
      .def_readonly("winners", &Assignment::winners)
      .def("complete", &Assignment::complete);

  py::class_<MonroeValidity>(m, "MonroeValidity")
      .def_readonly("ok", &MonroeValidity::ok)
      .def_readonly("partial", &MonroeValidity::partial)
      .def_readonly("violations", &MonroeValidity::violations);

  py::class_<SolveResult>(m, "SolveResult")
      .def_property_readonly("algorithm",
                             [](const SolveResult& r) { return std::string(to_string(r.algorithm)); })
      .def_property_readonly("rule",
                             [](const SolveResult& r) { return std::string(to_string(r.rule)); })
      .def_readonly("winners", &SolveResult::winners)
      .def_readonly("assignment", &SolveResult::assignment)
      .def_readonly("satisfaction", &SolveResult::satisfaction)
      .def_readonly("elapsed_ms", &SolveResult::elapsed_ms)
      .def_readonly("notes", &SolveResult::notes)
      .def("__repr__", [](const SolveResult& r) {
        std::ostringstream out;
        out << "SolveResult(algorithm='" << to_string(r.algorithm) << "', satisfaction="
            << r.satisfaction << ")";
        return out.str();
      });

  m.def("borda_psf", &ScoringFunction::borda, py::arg("m"));
  m.def("satisfaction", &satisfaction, py::arg("profile"), py::arg("psf"),
        py::arg("assignment"));
  m.def("ideal_satisfaction", &ideal_satisfaction, py::arg("profile"), py::arg("psf"));
  m.def("validate_monroe", &validate_monroe, py::arg("assignment"), py::arg("n"),
        py::arg("k"));

  m.def("optimal_cc_assignment", &optimal_cc_assignment, py::arg("profile"), py::arg("psf"),
        py::arg("members"));
  m.def("optimal_monroe_assignment", &optimal_monroe_assignment, py::arg("profile"),
        py::arg("psf"), py::arg("members"), py::arg("k"));

  m.def("algorithm_a", &algorithm_a, py::arg("profile"), py::arg("psf"), py::arg("k"));
  m.def("algorithm_b", &algorithm_b, py::arg("profile"), py::arg("psf"), py::arg("k"));
  m.def("algorithm_c_monroe", &algorithm_c_monroe, py::arg("profile"), py::arg("psf"),
        py::arg("k"), py::arg("d") = 15);
  m.def("algorithm_c_cc", &algorithm_c_cc, py::arg("profile"), py::arg("psf"), py::arg("k"),
        py::arg("d") = 15);
  m.def("algorithm_gm", &algorithm_gm, py::arg("profile"), py::arg("psf"), py::arg("k"),
        py::arg("rule"));
  m.def("algorithm_p", &algorithm_p, py::arg("profile"), py::arg("psf"), py::arg("k"));
  m.def(
      "algorithm_r",
      [](const PreferenceProfile& profile, const ScoringFunction& psf, int k, Rule rule,
         int samples, std::uint64_t seed) {
        return algorithm_r(profile, psf, k, rule, SamplingPlan{samples}, seed);
      },
      py::arg("profile"), py::arg("psf"), py::arg("k"), py::arg("rule"),
      py::arg("samples") = 100, py::arg("seed") = 1);
  m.def(
      "exact_solver",
      [](const PreferenceProfile& profile, const ScoringFunction& psf, int k, Rule rule,
         long long subset_limit) {
        ExactConfig config;
        config.subset_limit = subset_limit;
        return exact_solver(profile, psf, k, rule, config);
      },
      py::arg("profile"), py::arg("psf"), py::arg("k"), py::arg("rule"),
      py::arg("subset_limit") = 2'000'000LL);

  m.def("lambert_w", &lambert_w, py::arg("x"));
  m.def("sample_count", &sample_count, py::arg("lam"), py::arg("epsilon"), py::arg("k"));
  m.def("theoretical_bound", &theoretical_bound, py::arg("algorithm"), py::arg("rule"),
        py::arg("m"), py::arg("k"));

  m.def("kendall_tau", &kendall_tau, py::arg("r1"), py::arg("r2"));
  m.def("gen_impartial_culture", &gen_impartial_culture, py::arg("m"), py::arg("n"),
        py::arg("seed"));
  m.def(
      "gen_urn",
      [](int m, int n, std::uint64_t seed, double ratio) {
        return gen_urn(m, n, seed, UrnParams{ratio});
      },
      py::arg("m"), py::arg("n"), py::arg("seed"), py::arg("ratio") = 0.05);
  m.def("gen_mallows", &gen_mallows, py::arg("m"), py::arg("n"), py::arg("center"),
        py::arg("phi"), py::arg("seed"));
  m.def(
      "gen_mallows_mixture",
      [](int m, int n, std::uint64_t seed, int components) {
        return gen_mallows_mixture(m, n, seed, random_mixture_params(m, components, seed));
      },
      py::arg("m"), py::arg("n"), py::arg("seed"), py::arg("components") = 5);

  m.def(
      "parse_profile",
      [](const std::string& text) {
        std::istringstream in(text);
        return read_profile(in);
      },
      py::arg("text"));
  m.def("format_profile", &write_profile_string, py::arg("profile"));
}

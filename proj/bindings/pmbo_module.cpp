#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pmbo/acquisition.hpp"
#include "pmbo/baselines.hpp"
#include "pmbo/harness.hpp"
#include "pmbo/multiindex.hpp"
#include "pmbo/objectives.hpp"
#include "pmbo/optimizer.hpp"
#include "pmbo/sampling.hpp"
#include "pmbo/surrogate.hpp"
#include "pmbo/trace.hpp"

namespace py = pybind11;
using namespace pmbo;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Polynomial-model-based blackbox optimization";

    py::enum_<DegreeNorm>(m, "DegreeNorm")
        .value("L1", DegreeNorm::L1)
        .value("L2", DegreeNorm::L2)
        .value("LInf", DegreeNorm::LInf);

    py::class_<MultiIndexSet>(m, "MultiIndexSet")
        .def(py::init<int, std::vector<MultiIndex>>(), py::arg("dimension"), py::arg("indices"))
        .def_property_readonly("dimension", &MultiIndexSet::dimension)
        .def("__len__", &MultiIndexSet::size)
        .def("__getitem__",
             [](const MultiIndexSet& s, std::size_t i) {
                 if (i >= s.size()) throw py::index_error();
                 return s[i];
             })
        .def("indices", &MultiIndexSet::indices)
        .def("contains", &MultiIndexSet::contains)
        .def("max_exponent", &MultiIndexSet::max_exponent)
        .def("is_downward_closed", &MultiIndexSet::is_downward_closed)
        .def("frontier", &MultiIndexSet::frontier, py::arg("max_exponent") = kMaxExponent)
        .def("with_index", &MultiIndexSet::with_index)
        .def("to_json", &MultiIndexSet::to_json)
        .def_static("from_json", &MultiIndexSet::from_json)
        .def("__eq__", [](const MultiIndexSet& a, const MultiIndexSet& b) { return a == b; });

    m.def("total_degree_set", &total_degree_set, py::arg("dimension"), py::arg("degree"),
          py::arg("norm") = DegreeNorm::L1);
    m.def("is_downward_closed",
          [](const MultiIndexSet& s) { return s.is_downward_closed(); });

    py::class_<GeneratingNodes>(m, "GeneratingNodes")
        .def_readonly("nodes", &GeneratingNodes::nodes)
        .def("max_exponent", &GeneratingNodes::max_exponent);

    m.def("leja_chebyshev_nodes", &leja_chebyshev_nodes, py::arg("max_exponent"));
    m.def("node_for_index", &node_for_index);
    m.def("random_uniform_points", &random_uniform_points, py::arg("dimension"), py::arg("count"),
          py::arg("rng_seed"));
    m.def("sobol_points", &sobol_points, py::arg("dimension"), py::arg("count"));
    m.def("chebyshev_seed", &chebyshev_seed, py::arg("dimension"), py::arg("count"),
          py::arg("generating_nodes"));

    py::enum_<SampleOrigin>(m, "SampleOrigin")
        .value("Seed", SampleOrigin::Seed)
        .value("Frontier", SampleOrigin::Frontier)
        .value("Exploit", SampleOrigin::Exploit);

    py::class_<SampleSet>(m, "SampleSet")
        .def(py::init<int>(), py::arg("dimension"))
        .def("__len__", &SampleSet::size)
        .def("append", &SampleSet::append, py::arg("x"), py::arg("f"),
             py::arg("origin") = SampleOrigin::Seed)
        .def("points", &SampleSet::points)
        .def("values", &SampleSet::values);

    py::register_exception<RankDeficientError>(m, "RankDeficientError");
    py::register_exception<FrontierExhaustedError>(m, "FrontierExhaustedError");

    py::class_<PolynomialSurrogate>(m, "PolynomialSurrogate")
        .def_readonly("indices", &PolynomialSurrogate::indices)
        .def_readonly("generating_nodes", &PolynomialSurrogate::generating_nodes)
        .def_readonly("coefficients", &PolynomialSurrogate::coefficients)
        .def_property_readonly("dimension", &PolynomialSurrogate::dimension)
        .def("evaluate", &PolynomialSurrogate::evaluate)
        .def("__call__", &PolynomialSurrogate::evaluate)
        .def("gradient", &PolynomialSurrogate::gradient)
        .def("to_json", &PolynomialSurrogate::to_json);

    m.def("design_matrix", &design_matrix);
    m.def(
        "fit",
        [](const std::vector<Point>& points, const std::vector<double>& values,
           const MultiIndexSet& indices, const GeneratingNodes& gen, double ridge) {
            return fit(points, values, indices, gen, ridge);
        },
        py::arg("points"), py::arg("values"), py::arg("indices"), py::arg("generating_nodes"),
        py::arg("ridge") = 0.0);
    m.def(
        "fit_samples",
        [](const SampleSet& samples, const MultiIndexSet& indices, const GeneratingNodes& gen,
           double ridge) { return fit(samples, indices, gen, ridge); },
        py::arg("samples"), py::arg("indices"), py::arg("generating_nodes"),
        py::arg("ridge") = 0.0);

    py::class_<BootstrapEnsemble>(m, "BootstrapEnsemble")
        .def_readonly("members", &BootstrapEnsemble::members)
        .def("__len__", &BootstrapEnsemble::replicates)
        .def("mean_var",
             [](const BootstrapEnsemble& e, const Point& x) { return ensemble_mean_var(e, x); });

    m.def("bootstrap_fit", &bootstrap_fit, py::arg("samples"), py::arg("indices"),
          py::arg("generating_nodes"), py::arg("replicates"), py::arg("rng_seed"),
          py::arg("ridge") = 0.0);
    m.def("ensemble_mean_var", &ensemble_mean_var);

    py::enum_<GammaSchedule>(m, "GammaSchedule")
        .value("Constant", GammaSchedule::Constant)
        .value("LinearDecay", GammaSchedule::LinearDecay);

    py::class_<AcquisitionConfig>(m, "AcquisitionConfig")
        .def(py::init<>())
        .def_readwrite("gamma", &AcquisitionConfig::gamma)
        .def_readwrite("schedule", &AcquisitionConfig::schedule)
        .def_readwrite("decay_end", &AcquisitionConfig::decay_end);

    m.def("acquisition_value", &acquisition_value, py::arg("mean"), py::arg("var"),
          py::arg("gamma"));
    m.def("gamma_at", &gamma_at);
    m.def("select_next_index",
          [](const MultiIndexSet& indices, const GeneratingNodes& gen,
             const PolynomialSurrogate& surrogate, const BootstrapEnsemble& ensemble,
             double gamma) {
              const IndexSelection sel = select_next_index(indices, gen, surrogate, ensemble, gamma);
              return std::make_pair(sel.index, sel.node);
          });

    py::class_<KnownOptimum>(m, "KnownOptimum")
        .def_readonly("x", &KnownOptimum::x)
        .def_readonly("f", &KnownOptimum::f);

    py::class_<Objective>(m, "Objective")
        .def_property_readonly("name", &Objective::name)
        .def_property_readonly("dimension", &Objective::dimension)
        .def_property_readonly("native_box", &Objective::native_box)
        .def_property_readonly("known_optimum",
                               [](const Objective& o) { return o.known_optimum(); })
        .def("to_native", &Objective::to_native)
        .def("to_unit", &Objective::to_unit)
        .def("evaluate_native", &Objective::evaluate_native)
        .def("evaluate_unit", &Objective::evaluate_unit);

    m.def("make_objective", &make_objective, py::arg("name"));
    m.def(
        "custom_objective",
        [](const std::string& name, const std::vector<std::pair<double, double>>& native_box,
           const std::function<double(const Point&)>& evaluator) {
            return Objective(name, native_box, evaluator);
        },
        py::arg("name"), py::arg("native_box"), py::arg("evaluator"));

    py::enum_<SeedStrategy>(m, "SeedStrategy")
        .value("Random", SeedStrategy::Random)
        .value("Chebyshev", SeedStrategy::Chebyshev)
        .value("Sobol", SeedStrategy::Sobol)
        .value("Cmaes", SeedStrategy::Cmaes);

    py::class_<SeedConfig>(m, "SeedConfig")
        .def(py::init<>())
        .def_readwrite("strategy", &SeedConfig::strategy)
        .def_readwrite("size", &SeedConfig::size)
        .def_readwrite("rng_seed", &SeedConfig::rng_seed);

    py::class_<PmboConfig>(m, "PmboConfig")
        .def(py::init<>())
        .def_readwrite("seed", &PmboConfig::seed)
        .def_readwrite("initial_degree_cap", &PmboConfig::initial_degree_cap)
        .def_readwrite("acquisition", &PmboConfig::acquisition)
        .def_readwrite("bootstrap_replicates", &PmboConfig::bootstrap_replicates)
        .def_readwrite("ridge", &PmboConfig::ridge)
        .def_readwrite("exploit_model_optimum", &PmboConfig::exploit_model_optimum)
        .def_readwrite("max_evaluations", &PmboConfig::max_evaluations)
        .def_readwrite("convergence_tol", &PmboConfig::convergence_tol)
        .def_readwrite("convergence_patience", &PmboConfig::convergence_patience)
        .def_readwrite("rng_seed", &PmboConfig::rng_seed);

    py::enum_<StopReason>(m, "StopReason")
        .value("Budget", StopReason::Budget)
        .value("Converged", StopReason::Converged);

    py::class_<TraceRecord>(m, "TraceRecord")
        .def_readonly("eval_index", &TraceRecord::eval_index)
        .def_readonly("x", &TraceRecord::x)
        .def_readonly("f", &TraceRecord::f)
        .def_readonly("best_so_far", &TraceRecord::best_so_far)
        .def_readonly("origin", &TraceRecord::origin);

    py::class_<RunTrace>(m, "RunTrace")
        .def_readonly("records", &RunTrace::records)
        .def_readonly("reason", &RunTrace::reason)
        .def_readonly("final_surrogate", &RunTrace::final_surrogate)
        .def("__len__", &RunTrace::evaluations)
        .def("final_best", &RunTrace::final_best)
        .def("best_curve", [](const RunTrace& t) {
            std::vector<double> best;
            best.reserve(t.records.size());
            for (const TraceRecord& rec : t.records) best.push_back(rec.best_so_far);
            return best;
        });

    m.def("initial_degree_for_seed", &initial_degree_for_seed);
    m.def("surrogate_minimize", &surrogate_minimize, py::arg("surrogate"), py::arg("restarts") = 16,
          py::arg("rng_seed") = 0);
    m.def("run_pmbo", &run_pmbo, py::arg("objective"), py::arg("config"));

    m.def("random_search", &random_search, py::arg("objective"), py::arg("budget"),
          py::arg("rng_seed"));
    m.def("sobol_search", &sobol_search, py::arg("objective"), py::arg("budget"));
    m.def("cmaes_run", &cmaes_run, py::arg("objective"), py::arg("budget"), py::arg("rng_seed"));

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("objective", &ExperimentConfig::objective)
        .def_readwrite("algorithms", &ExperimentConfig::algorithms)
        .def_readwrite("repeats", &ExperimentConfig::repeats)
        .def_readwrite("max_evaluations", &ExperimentConfig::max_evaluations)
        .def_readwrite("seed_size", &ExperimentConfig::seed_size)
        .def_readwrite("gamma", &ExperimentConfig::gamma)
        .def_readwrite("bootstrap_replicates", &ExperimentConfig::bootstrap_replicates)
        .def_readwrite("base_rng_seed", &ExperimentConfig::base_rng_seed)
        .def_readwrite("out_dir", &ExperimentConfig::out_dir);

    py::class_<AggregateCurve>(m, "AggregateCurve")
        .def_readonly("algorithm", &AggregateCurve::algorithm)
        .def_readonly("median", &AggregateCurve::median)
        .def_readonly("lo", &AggregateCurve::lo)
        .def_readonly("hi", &AggregateCurve::hi);

    py::class_<AggregateResult>(m, "AggregateResult")
        .def_readonly("curves", &AggregateResult::curves);

    py::register_exception<ConfigError>(m, "ConfigError");

    m.def("parse_config_file", &parse_config_file);
    m.def("parse_config_text", &parse_config_text);
    m.def("aggregate", &aggregate, py::arg("traces"), py::arg("algorithm") = "");
    m.def("run_algorithm", &run_algorithm, py::arg("algorithm"), py::arg("objective"),
          py::arg("config"), py::arg("rng_seed"));
    m.def("run_experiment", &run_experiment);
    m.def("emit_plot", &emit_plot, py::arg("result"), py::arg("path"), py::arg("title") = "");
}

// Python bindings for the lessinfer core library.
//
// Exposes the main operations: world loading, trajectory enumeration and
// featurization, kernel density and bandwidth selection, the three choice
// rules, posterior updates, demonstration sampling, and the comparison
// metrics.  Heavy lifting stays in C++; the python layer is a thin veneer
// used for smoke testing and interactive exploration.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <stdexcept>

#include "lessinfer/error.hpp"
#include "lessinfer/experiments.hpp"
#include "lessinfer/inference.hpp"
#include "lessinfer/kernel.hpp"
#include "lessinfer/metrics.hpp"
#include "lessinfer/models.hpp"
#include "lessinfer/sampler.hpp"
#include "lessinfer/trajectory.hpp"
#include "lessinfer/trajectory_set.hpp"
#include "lessinfer/world.hpp"

namespace py = pybind11;
using namespace lessinfer;

namespace {

ModelKind kind_from_string(const std::string& name) {
  return model_kind_from_string(name);
}

std::optional<Kernel> make_kernel(std::optional<double> bandwidth) {
  if (!bandwidth) return std::nullopt;
  Kernel k{*bandwidth};
  k.validate();
  return k;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Similarity-aware choice models and Bayesian reward inference";

  py::register_exception<config_error>(m, "ConfigError");
  py::register_exception<degenerate_error>(m, "DegenerateInputError");
  py::register_exception<numerical_error>(m, "NumericalError");

  py::class_<Cell>(m, "Cell")
      .def(py::init<int, int>(), py::arg("x"), py::arg("y"))
      .def_readwrite("x", &Cell::x)
      .def_readwrite("y", &Cell::y)
      .def("__eq__", [](const Cell& a, const Cell& b) { return a == b; })
      .def("__repr__", [](const Cell& c) {
        return "Cell(" + std::to_string(c.x) + ", " + std::to_string(c.y) + ")";
      });

  py::class_<GridWorld>(m, "GridWorld")
      .def_static("load", &GridWorld::load, py::arg("path"))
      .def_readonly("width", &GridWorld::width)
      .def_readonly("height", &GridWorld::height)
      .def_readonly("start", &GridWorld::start)
      .def_readonly("goal", &GridWorld::goal)
      .def("__repr__", [](const GridWorld& w) {
        return "GridWorld(" + std::to_string(w.width) + "x" +
               std::to_string(w.height) + ")";
      });

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("cells", &Trajectory::cells)
      .def("moves", &Trajectory::moves)
      .def("length", &Trajectory::length);

  py::class_<TrajectorySet>(m, "TrajectorySet")
      .def_readonly("trajectories", &TrajectorySet::trajectories)
      .def_readonly("features", &TrajectorySet::features)
      .def("size", &TrajectorySet::size);

  m.def(
      "enumerate_trajectories",
      [](const GridWorld& world, int max_length) {
        TrajectorySet set = enumerate_trajectories(world, max_length);
        return compute_features(std::move(set), world, world.features);
      },
      py::arg("world"), py::arg("max_length"),
      "Enumerate all simple start-to-goal paths up to max_length moves and "
      "attach normalized feature vectors.");

  m.def(
      "subsample",
      [](const TrajectorySet& set, std::size_t size, std::uint64_t seed,
         std::optional<std::size_t> must_include) {
        std::optional<Trajectory> keep;
        if (must_include) keep = set.trajectories.at(*must_include);
        return subsample(set, size, seed, keep);
      },
      py::arg("set"), py::arg("size"), py::arg("seed"),
      py::arg("must_include") = std::nullopt,
      "Draw a uniform subset of the trajectory set without replacement.");

  m.def("select_bandwidth",
        [](const TrajectorySet& set) { return select_bandwidth(set).bandwidth; },
        py::arg("set"),
        "Pick the kernel bandwidth by leave-one-out density likelihood.");

  m.def(
      "density",
      [](const TrajectorySet& set, double bandwidth) {
        return density(set, Kernel{bandwidth});
      },
      py::arg("set"), py::arg("bandwidth"),
      "Per-trajectory kernel density estimates over the set's feature "
      "vectors (self-term included).");

  m.def(
      "boltzmann",
      [](const TrajectorySet& set, const std::vector<double>& theta,
         double beta) {
        return boltzmann(set, RewardModel{theta, beta}).probs;
      },
      py::arg("set"), py::arg("theta"), py::arg("beta"),
      "Softmax choice probabilities over the set under reward theta.");

  m.def(
      "less_rule",
      [](const TrajectorySet& set, const std::vector<double>& theta,
         double beta, double bandwidth) {
        return less_rule(set, RewardModel{theta, beta}, Kernel{bandwidth}).probs;
      },
      py::arg("set"), py::arg("theta"), py::arg("beta"), py::arg("bandwidth"),
      "Density-corrected choice probabilities: softmax weight divided by the "
      "local feature-space density.");

  m.def(
      "attribute_rule",
      [](const TrajectorySet& set, const std::vector<double>& theta,
         double beta) {
        return attribute_rule(set, RewardModel{theta, beta}).probs;
      },
      py::arg("set"), py::arg("theta"), py::arg("beta"),
      "Grouped choice rule: options with identical features share one "
      "softmax weight split uniformly among them.");

  py::class_<ThetaGrid>(m, "ThetaGrid")
      .def(py::init([](std::vector<std::vector<double>> candidates) {
             ThetaGrid grid;
             grid.candidates = std::move(candidates);
             for (std::size_t i = 0; i < grid.candidates.size(); ++i)
               grid.labels.push_back("theta_" + std::to_string(i));
             grid.validate();
             return grid;
           }),
           py::arg("candidates"))
      .def_static("signs", &ThetaGrid::signs, py::arg("dimension"))
      .def_readonly("candidates", &ThetaGrid::candidates)
      .def("size", &ThetaGrid::size);

  m.def("uniform_belief",
        [](const ThetaGrid& grid) { return uniform_belief(grid).probs; },
        py::arg("grid"));

  m.def(
      "update",
      [](const std::vector<double>& belief, const ThetaGrid& grid,
         std::size_t demo_index, const TrajectorySet& set,
         const std::string& kind, std::optional<double> bandwidth,
         double beta) {
        Belief b{belief};
        Belief out = update(b, grid, set.trajectories.at(demo_index), set,
                            kind_from_string(kind), make_kernel(bandwidth), beta);
        return out.probs;
      },
      py::arg("belief"), py::arg("grid"), py::arg("demo_index"),
      py::arg("set"), py::arg("kind"), py::arg("bandwidth") = std::nullopt,
      py::arg("beta") = 1.0,
      "One Bayesian posterior update from a single observed choice.");

  m.def(
      "batch_update",
      [](const std::vector<double>& belief, const ThetaGrid& grid,
         const std::vector<std::size_t>& demo_indices, const TrajectorySet& set,
         const std::string& kind, std::optional<double> bandwidth,
         double beta) {
        Belief b{belief};
        std::vector<Trajectory> demos;
        demos.reserve(demo_indices.size());
        for (std::size_t i : demo_indices) demos.push_back(set.trajectories.at(i));
        Belief out = batch_update(b, grid, demos, set, kind_from_string(kind),
                                  make_kernel(bandwidth), beta);
        return out.probs;
      },
      py::arg("belief"), py::arg("grid"), py::arg("demo_indices"),
      py::arg("set"), py::arg("kind"), py::arg("bandwidth") = std::nullopt,
      py::arg("beta") = 1.0,
      "Posterior update from several observed choices at once, normalizing "
      "a single time at the end.");

  m.def(
      "predict",
      [](const std::vector<double>& belief, const ThetaGrid& grid,
         const TrajectorySet& set, const std::string& kind,
         std::optional<double> bandwidth, double beta) {
        Belief b{belief};
        return predict(b, grid, set, kind_from_string(kind),
                       make_kernel(bandwidth), beta)
            .probs;
      },
      py::arg("belief"), py::arg("grid"), py::arg("set"), py::arg("kind"),
      py::arg("bandwidth") = std::nullopt, py::arg("beta") = 1.0,
      "Belief-weighted mixture of per-candidate choice distributions.");

  m.def(
      "map_theta",
      [](const std::vector<double>& belief) { return map_theta(Belief{belief}); },
      py::arg("belief"),
      "Index of the posterior mode (lowest index on ties).");

  m.def(
      "sample_demos",
      [](const TrajectorySet& set, const std::vector<double>& theta_star,
         double beta, const std::string& kind, std::optional<double> bandwidth,
         std::size_t count, std::uint64_t seed) {
        DemonstrationSet demos =
            sample_demos(set, theta_star, beta, kind_from_string(kind),
                         make_kernel(bandwidth), count, seed);
        return demos.indices;
      },
      py::arg("set"), py::arg("theta_star"), py::arg("beta"), py::arg("kind"),
      py::arg("bandwidth"), py::arg("count"), py::arg("seed"),
      "Draw demonstration indices from the chosen model's distribution.");

  m.def(
      "true_match",
      [](const std::vector<double>& belief, const ThetaGrid& grid,
         std::size_t true_index) {
        return true_match(Belief{belief}, grid, true_index);
      },
      py::arg("belief"), py::arg("grid"), py::arg("true_index"));

  m.def(
      "true_posterior",
      [](const std::vector<double>& belief, std::size_t true_index) {
        return true_posterior(Belief{belief}, true_index);
      },
      py::arg("belief"), py::arg("true_index"));

  m.def(
      "kl_aggregate",
      [](const std::vector<std::vector<double>>& posteriors) {
        PosteriorCollection collection;
        for (const auto& p : posteriors) collection.posteriors.push_back(Belief{p});
        return kl_aggregate(collection);
      },
      py::arg("posteriors"),
      "Sum of KL divergences over all ordered pairs of posteriors.");

  m.def(
      "run_turk_predict",
      [](double lambda) {
        TurkPrediction pred = run_turk_predict(lambda);
        py::dict out;
        out["lambda"] = pred.lambda;
        out["boltzmann"] = pred.boltzmann_probs;
        out["less"] = pred.less_probs;
        return out;
      },
      py::arg("lambda_"),
      "Closed-form four-option prediction comparing the softmax rule with "
      "the density-corrected rule.");
}

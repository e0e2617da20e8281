// Python bindings for the main library operations. Matrices cross the
// boundary as numpy arrays via pybind11's Eigen support; the d x n column
// layout of feature matrices is kept as-is.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "zsmap/aezsl.hpp"
#include "zsmap/daezsl.hpp"
#include "zsmap/dataset.hpp"
#include "zsmap/eszsl.hpp"
#include "zsmap/gzsl.hpp"
#include "zsmap/linalg.hpp"
#include "zsmap/metrics.hpp"
#include "zsmap/refine.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_zsmap, m) {
  m.doc() = "Category-specific visual-semantic mapping for zero-shot learning";

  py::class_<zsmap::ZslDataset>(m, "ZslDataset")
      .def(py::init<>())
      .def_readwrite("seen_features", &zsmap::ZslDataset::seen_features)
      .def_readwrite("seen_labels", &zsmap::ZslDataset::seen_labels)
      .def_readwrite("seen_semantics", &zsmap::ZslDataset::seen_semantics)
      .def_readwrite("unseen_features", &zsmap::ZslDataset::unseen_features)
      .def_readwrite("unseen_semantics", &zsmap::ZslDataset::unseen_semantics)
      // Explicit copy: a numpy view into the optional's temporary would dangle.
      .def_property(
          "unseen_labels",
          [](const zsmap::ZslDataset& d) -> std::optional<zsmap::Matrix> {
            return d.unseen_labels;
          },
          [](zsmap::ZslDataset& d, std::optional<zsmap::Matrix> v) {
            d.unseen_labels = std::move(v);
          },
          py::return_value_policy::copy)
      .def_readwrite("seen_categories", &zsmap::ZslDataset::seen_categories)
      .def_readwrite("unseen_categories", &zsmap::ZslDataset::unseen_categories)
      .def("validate", &zsmap::ZslDataset::validate);

  py::class_<zsmap::SyntheticSpec>(m, "SyntheticSpec")
      .def(py::init<>())
      .def_readwrite("feature_dim", &zsmap::SyntheticSpec::feature_dim)
      .def_readwrite("semantic_dim", &zsmap::SyntheticSpec::semantic_dim)
      .def_readwrite("num_seen", &zsmap::SyntheticSpec::num_seen)
      .def_readwrite("num_unseen", &zsmap::SyntheticSpec::num_unseen)
      .def_readwrite("instances_per_category",
                     &zsmap::SyntheticSpec::instances_per_category)
      .def_readwrite("mapping_drift", &zsmap::SyntheticSpec::mapping_drift)
      .def_readwrite("noise_sigma", &zsmap::SyntheticSpec::noise_sigma)
      .def_readwrite("seed", &zsmap::SyntheticSpec::seed);

  m.def("generate_synthetic", &zsmap::generate_synthetic, py::arg("spec"));
  m.def("load_dataset", &zsmap::load_dataset, py::arg("manifest_path"));
  m.def("save_dataset", &zsmap::save_dataset, py::arg("manifest_path"),
        py::arg("dataset"), py::arg("name") = "dataset");

  m.def("solve_special_sylvester", &zsmap::linalg::solve_special_sylvester,
        py::arg("l"), py::arg("t"), py::arg("n"), py::arg("mu"));

  py::class_<zsmap::eszsl::EszslModel>(m, "EszslModel")
      .def_readonly("mapping", &zsmap::eszsl::EszslModel::mapping)
      .def_readonly("gamma", &zsmap::eszsl::EszslModel::gamma)
      .def_readonly("lambda_", &zsmap::eszsl::EszslModel::lambda);
  m.def("fit_eszsl", &zsmap::eszsl::fit_eszsl, py::arg("dataset"),
        py::arg("gamma"), py::arg("lambda_"));
  m.def("predict_compatibility", &zsmap::eszsl::predict_compatibility,
        py::arg("w"), py::arg("features"), py::arg("semantics"));
  m.def("argmax_rows", &zsmap::eszsl::argmax_rows, py::arg("scores"));

  py::class_<zsmap::aezsl::AezslOptions>(m, "AezslOptions")
      .def(py::init<>())
      .def_readwrite("lambda1", &zsmap::aezsl::AezslOptions::lambda1)
      .def_readwrite("lambda2", &zsmap::aezsl::AezslOptions::lambda2)
      .def_readwrite("lambda3", &zsmap::aezsl::AezslOptions::lambda3)
      .def_readwrite("max_sweeps", &zsmap::aezsl::AezslOptions::max_sweeps)
      .def_readwrite("tol", &zsmap::aezsl::AezslOptions::tol);

  py::class_<zsmap::aezsl::AezslModel>(m, "AezslModel")
      .def_readonly("mappings", &zsmap::aezsl::AezslModel::mappings)
      .def_readonly("classifiers", &zsmap::aezsl::AezslModel::classifiers)
      .def_readonly("objective_per_update",
                    &zsmap::aezsl::AezslModel::objective_per_update)
      .def_readonly("objective_per_sweep",
                    &zsmap::aezsl::AezslModel::objective_per_sweep);

  m.def(
      "fit_aezsl",
      [](const zsmap::ZslDataset& ds, const zsmap::aezsl::AezslOptions& opts) {
        const auto w = zsmap::aezsl::build_similarity(ds.seen_semantics,
                                                      ds.unseen_semantics);
        return zsmap::aezsl::fit_aezsl(ds, w, opts);
      },
      py::arg("dataset"), py::arg("options"));
  m.def("fit_aezsl_gzsl", &zsmap::gzsl::fit_aezsl_gzsl, py::arg("dataset"),
        py::arg("options"));
  m.def("calibrated_stack", &zsmap::gzsl::calibrated_stack, py::arg("scores"),
        py::arg("seen_mask"), py::arg("gamma_cal"));
  m.def(
      "select_gamma_ausuc",
      [](const zsmap::Matrix& scores, const std::vector<int>& labels,
         const std::vector<bool>& seen_mask) {
        const auto r = zsmap::gzsl::select_gamma_ausuc(scores, labels,
                                                       seen_mask);
        return py::make_tuple(r.gamma_cal, r.ausuc, r.curve);
      },
      py::arg("val_scores"), py::arg("val_labels"), py::arg("seen_mask"));

  py::class_<zsmap::refine::RefineOptions>(m, "RefineOptions")
      .def(py::init<>())
      .def_readwrite("gamma1", &zsmap::refine::RefineOptions::gamma1)
      .def_readwrite("gamma2", &zsmap::refine::RefineOptions::gamma2)
      .def_readwrite("gamma3", &zsmap::refine::RefineOptions::gamma3)
      .def_readwrite("k_nn", &zsmap::refine::RefineOptions::k_nn);
  py::class_<zsmap::refine::RefineResult>(m, "RefineResult")
      .def_readonly("labels", &zsmap::refine::RefineResult::labels)
      .def_readonly("classifiers", &zsmap::refine::RefineResult::classifiers)
      .def_readonly("moved_per_iteration",
                    &zsmap::refine::RefineResult::moved_per_iteration);
  m.def("refine_labels", &zsmap::refine::refine_labels,
        py::arg("test_features"), py::arg("initial_p"),
        py::arg("unseen_semantics"), py::arg("k"), py::arg("options"),
        py::arg("one_step") = false);

  py::class_<zsmap::daezsl::TrainOptions>(m, "DaezslTrainOptions")
      .def(py::init<>())
      .def_readwrite("epochs", &zsmap::daezsl::TrainOptions::epochs)
      .def_readwrite("batch_size", &zsmap::daezsl::TrainOptions::batch_size)
      .def_readwrite("learning_rate",
                     &zsmap::daezsl::TrainOptions::learning_rate)
      .def_readwrite("rho", &zsmap::daezsl::TrainOptions::rho)
      .def_readwrite("seed", &zsmap::daezsl::TrainOptions::seed)
      .def_readwrite("hidden_size", &zsmap::daezsl::TrainOptions::hidden_size)
      .def_readwrite("train_masks", &zsmap::daezsl::TrainOptions::train_masks);
  py::class_<zsmap::daezsl::DaezslParams>(m, "DaezslParams")
      .def_readonly("mapping", &zsmap::daezsl::DaezslParams::mapping);
  m.def(
      "train_daezsl",
      [](const zsmap::ZslDataset& ds, const zsmap::daezsl::TrainOptions& o) {
        const auto r = zsmap::daezsl::train_daezsl(ds, o);
        return py::make_tuple(r.params, r.loss_trace);
      },
      py::arg("dataset"), py::arg("options"));
  m.def(
      "predict_daezsl_all",
      [](const zsmap::daezsl::DaezslParams& p, const zsmap::Matrix& features,
         const zsmap::Matrix& unseen_semantics) {
        std::vector<int> out;
        for (Eigen::Index i = 0; i < features.cols(); ++i) {
          out.push_back(zsmap::daezsl::predict_daezsl(p, features.col(i),
                                                      unseen_semantics));
        }
        return out;
      },
      py::arg("params"), py::arg("features"), py::arg("unseen_semantics"));

  m.def("multiclass_accuracy", &zsmap::metrics::multiclass_accuracy,
        py::arg("predicted"), py::arg("truth"));
  m.def("flat_hit_at_k", &zsmap::metrics::flat_hit_at_k,
        py::arg("score_rows"), py::arg("truth"), py::arg("k"));
}

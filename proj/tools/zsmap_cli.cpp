// Command-line surface for the zero-shot mapping library: synthetic data
// generation, training (eszsl / aezsl / aezsl-sim / daezsl), progressive
// label refinement, prediction with optional calibrated stacking, and
// evaluation (accuracy, hit@K, hierarchical precision@K).

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "zsmap/aezsl.hpp"
#include "zsmap/daezsl.hpp"
#include "zsmap/dataset.hpp"
#include "zsmap/eszsl.hpp"
#include "zsmap/gzsl.hpp"
#include "zsmap/metrics.hpp"
#include "zsmap/model_io.hpp"
#include "zsmap/refine.hpp"

namespace {

using zsmap::Matrix;
using zsmap::Vector;

std::vector<int> label_indices(const Matrix& one_hot) {
  std::vector<int> out(static_cast<size_t>(one_hot.rows()));
  for (Eigen::Index r = 0; r < one_hot.rows(); ++r) {
    Eigen::Index c = 0;
    one_hot.row(r).maxCoeff(&c);
    out[static_cast<size_t>(r)] = static_cast<int>(c);
  }
  return out;
}

void write_json(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write report: " + path);
  out << j.dump(2) << '\n';
}

const std::vector<double>& decade_grid() {
  static const std::vector<double> grid = {1e-3, 1e-2, 1e-1, 1.0,
                                           1e1,  1e2,  1e3};
  return grid;
}

double unseen_accuracy_from_scores(const Matrix& scores,
                                   const Matrix& truth_one_hot) {
  return zsmap::metrics::multiclass_accuracy(
      zsmap::eszsl::argmax_rows(scores), label_indices(truth_one_hot));
}

// ---- train ----------------------------------------------------------------

struct TrainArgs {
  std::string data;
  std::string method = "eszsl";
  std::string out = "model.zsmap";
  std::string report;
  double gamma = 1.0, lambda = 1.0;
  double lambda1 = 1.0, lambda2 = 1.0, lambda3 = 1.0;
  int max_sweeps = 100;
  double tol = 1e-6;
  int epochs = 50, batch = 16, hidden = 0;
  double rate = 0.01, rho = 0.5;
  uint64_t seed = 0;
  bool cv = false;
  bool gzsl = false;
  bool fixed_mask = false;
  bool check_grad = false;
};

zsmap::ModelFile eszsl_model_file(const zsmap::eszsl::EszslModel& m) {
  zsmap::ModelFile f;
  f.method = "eszsl";
  f.params["gamma"] = m.gamma;
  f.params["lambda"] = m.lambda;
  f.matrices.emplace_back("W", m.mapping);
  return f;
}

zsmap::ModelFile aezsl_model_file(const zsmap::aezsl::AezslModel& m,
                                  const std::string& method,
                                  Eigen::Index seen_targets) {
  zsmap::ModelFile f;
  f.method = method;
  f.params["lambda1"] = m.options.lambda1;
  f.params["lambda2"] = m.options.lambda2;
  f.params["lambda3"] = m.options.lambda3;
  f.params["seen_targets"] = static_cast<double>(seen_targets);
  for (size_t c = 0; c < m.mappings.size(); ++c) {
    f.matrices.emplace_back("W" + std::to_string(c), m.mappings[c]);
  }
  f.matrices.emplace_back("P", m.classifiers);
  return f;
}

double grad_check_max_error(uint64_t seed) {
  zsmap::SyntheticSpec spec;
  spec.feature_dim = 8;
  spec.semantic_dim = 6;
  spec.num_seen = 4;
  spec.num_unseen = 2;
  spec.instances_per_category = 3;
  spec.noise_sigma = 0.1;
  spec.seed = seed;
  const auto ds = zsmap::generate_synthetic(spec);
  auto params = zsmap::daezsl::init_params(spec.feature_dim, spec.semantic_dim,
                                           0, seed + 1);
  const auto labels = label_indices(ds.seen_labels);

  double loss = 0.0;
  const auto analytic = zsmap::daezsl::batch_gradients(
      params, ds.seen_features, labels, ds.seen_semantics, loss);

  const double step = 1e-5;
  double max_err = 0.0;
  auto probe = [&](auto& block, const auto& grad) {
    for (Eigen::Index i = 0; i < block.size(); ++i) {
      const double orig = block(i);
      double lp = 0.0, lm = 0.0;
      block(i) = orig + step;
      zsmap::daezsl::batch_gradients(params, ds.seen_features, labels,
                                     ds.seen_semantics, lp);
      block(i) = orig - step;
      zsmap::daezsl::batch_gradients(params, ds.seen_features, labels,
                                     ds.seen_semantics, lm);
      block(i) = orig;
      const double fd = (lp - lm) / (2.0 * step);
      const double err = std::abs(grad(i) - fd) /
                         std::max({1.0, std::abs(grad(i)), std::abs(fd)});
      max_err = std::max(max_err, err);
    }
  };
  probe(params.hidden_weights, analytic.hidden_weights);
  probe(params.hidden_bias, analytic.hidden_bias);
  probe(params.output_weights, analytic.output_weights);
  probe(params.output_bias, analytic.output_bias);
  probe(params.mapping, analytic.mapping);
  return max_err;
}

int cmd_train(const TrainArgs& args) {
  if (args.method == "daezsl" && args.check_grad) {
    const double err = grad_check_max_error(args.seed);
    std::printf("max relative gradient error: %.3e (%s)\n", err,
                err < 1e-4 ? "ok" : "TOO LARGE");
    return err < 1e-4 ? 0 : 1;
  }

  const auto ds = zsmap::load_dataset(args.data);
  nlohmann::json report;
  report["method"] = args.method;

  if (args.method == "eszsl") {
    double gamma = args.gamma, lambda = args.lambda;
    if (args.cv) {
      const auto split = zsmap::validation_split(ds);
      double best = -1.0;
      for (double g : decade_grid()) {
        for (double l : decade_grid()) {
          const auto m = zsmap::eszsl::fit_eszsl(split.inner, g, l);
          const Matrix scores = zsmap::eszsl::predict_compatibility(
              m.mapping, split.inner.unseen_features,
              split.inner.unseen_semantics);
          const double acc =
              unseen_accuracy_from_scores(scores, *split.inner.unseen_labels);
          if (acc > best) {
            best = acc;
            gamma = g;
            lambda = l;
          }
        }
      }
      report["cv"] = {{"gamma", gamma}, {"lambda", lambda}, {"val_accuracy", best}};
    }
    const auto model = zsmap::eszsl::fit_eszsl(ds, gamma, lambda);
    zsmap::save_model(args.out, eszsl_model_file(model));
    const Matrix train_scores = zsmap::eszsl::predict_compatibility(
        model.mapping, ds.seen_features, ds.seen_semantics);
    const double train_acc =
        unseen_accuracy_from_scores(train_scores, ds.seen_labels);
    report["train_accuracy"] = train_acc;
    std::printf("eszsl: gamma=%g lambda=%g train_accuracy=%.4f\n", gamma,
                lambda, train_acc);
  } else if (args.method == "aezsl" || args.method == "aezsl-sim") {
    zsmap::aezsl::AezslOptions opts;
    opts.lambda1 = args.lambda1;
    opts.lambda2 = args.lambda2;
    opts.lambda3 = args.method == "aezsl-sim" ? 0.0 : args.lambda3;
    opts.max_sweeps = args.max_sweeps;
    opts.tol = args.tol;
    if (args.cv) {
      const auto split = zsmap::validation_split(ds);
      const auto w = zsmap::aezsl::build_similarity(
          split.inner.seen_semantics, split.inner.unseen_semantics);
      double best = -1.0;
      zsmap::aezsl::AezslOptions chosen = opts;
      const std::vector<double> l3_grid =
          args.method == "aezsl-sim" ? std::vector<double>{0.0} : decade_grid();
      for (double l1 : decade_grid()) {
        for (double l2 : decade_grid()) {
          for (double l3 : l3_grid) {
            zsmap::aezsl::AezslOptions trial = opts;
            trial.lambda1 = l1;
            trial.lambda2 = l2;
            trial.lambda3 = l3;
            const auto m = zsmap::aezsl::fit_aezsl(split.inner, w, trial);
            const Matrix scores =
                split.inner.unseen_features.transpose() * m.classifiers;
            const double acc = unseen_accuracy_from_scores(
                scores, *split.inner.unseen_labels);
            if (acc > best) {
              best = acc;
              chosen = trial;
            }
          }
        }
      }
      opts = chosen;
      report["cv"] = {{"lambda1", opts.lambda1},
                      {"lambda2", opts.lambda2},
                      {"lambda3", opts.lambda3},
                      {"val_accuracy", best}};
      std::printf("cv chose lambda1=%g lambda2=%g lambda3=%g\n", opts.lambda1,
                  opts.lambda2, opts.lambda3);
    }
    Eigen::Index seen_targets = 0;
    zsmap::aezsl::AezslModel model;
    if (args.gzsl) {
      model = zsmap::gzsl::fit_aezsl_gzsl(ds, opts);
      seen_targets = ds.num_seen();
    } else {
      const auto w = zsmap::aezsl::build_similarity(ds.seen_semantics,
                                                    ds.unseen_semantics);
      model = zsmap::aezsl::fit_aezsl(ds, w, opts);
    }
    zsmap::save_model(
        args.out,
        aezsl_model_file(model, args.gzsl ? "aezsl-gzsl" : args.method,
                         seen_targets));
    report["sweeps"] = model.objective_per_sweep.size() - 1;
    report["final_objective"] = model.objective_per_sweep.back();
    std::printf("%s: %zu sweeps, objective %.6g\n", args.method.c_str(),
                model.objective_per_sweep.size() - 1,
                model.objective_per_sweep.back());
  } else if (args.method == "daezsl") {
    zsmap::daezsl::TrainOptions opts;
    opts.epochs = args.epochs;
    opts.batch_size = args.batch;
    opts.learning_rate = args.rate;
    opts.rho = args.rho;
    opts.seed = args.seed;
    opts.hidden_size = args.hidden;
    opts.train_masks = !args.fixed_mask;
    const auto result = zsmap::daezsl::train_daezsl(ds, opts);
    zsmap::daezsl::save_params(args.out, result.params);
    report["final_loss"] = result.loss_trace.empty() ? 0.0 : result.loss_trace.back();
    report["loss_trace"] = result.loss_trace;
    std::printf("daezsl: %d epochs, final mean loss %.6g\n", args.epochs,
                result.loss_trace.empty() ? 0.0 : result.loss_trace.back());
  } else {
    throw std::invalid_argument("unknown method: " + args.method);
  }

  if (!args.report.empty()) write_json(args.report, report);
  return 0;
}

// ---- scores ---------------------------------------------------------------

bool is_daezsl_file(const std::string& path) {
  std::ifstream in(path);
  std::string magic;
  in >> magic;
  return magic == "daezsl-params";
}

Matrix model_scores(const std::string& model_path, const zsmap::ZslDataset& ds,
                    const Matrix& features, bool joint_space) {
  if (is_daezsl_file(model_path)) {
    const auto params = zsmap::daezsl::load_params(model_path);
    const Matrix& sem =
        joint_space ? zsmap::gzsl::joint_semantics(ds) : ds.unseen_semantics;
    const Matrix masks = zsmap::daezsl::generate_masks(params, sem);
    Matrix scores(features.cols(), sem.cols());
    for (Eigen::Index i = 0; i < features.cols(); ++i) {
      const Matrix j = zsmap::daezsl::decision_matrix(
          features.col(i), masks, params.mapping, sem);
      scores.row(i) = j.diagonal().transpose();
    }
    return scores;
  }
  const auto model = zsmap::load_model(model_path);
  if (model.method == "eszsl") {
    const Matrix& sem =
        joint_space ? zsmap::gzsl::joint_semantics(ds) : ds.unseen_semantics;
    return zsmap::eszsl::predict_compatibility(model.matrix("W"), features,
                                               sem);
  }
  return features.transpose() * model.matrix("P");
}

// ---- predict --------------------------------------------------------------

struct PredictArgs {
  std::string data;
  std::string model;
  std::string out = "predictions.csv";
  std::string report;
  bool gzsl = false;
  std::string gamma_cal = "0";
};

int cmd_predict(const PredictArgs& args) {
  const auto ds = zsmap::load_dataset(args.data);
  const Matrix scores =
      model_scores(args.model, ds, ds.unseen_features, args.gzsl);
  nlohmann::json report;

  std::vector<int> pred;
  if (args.gzsl) {
    std::vector<bool> seen_mask(static_cast<size_t>(scores.cols()), false);
    for (Eigen::Index c = 0; c < ds.num_seen(); ++c) {
      seen_mask[static_cast<size_t>(c)] = true;
    }
    double gamma = 0.0;
    if (args.gamma_cal == "auto") {
      // Calibration instances: seen training instances plus the labeled
      // unseen instances, both scored in the joint label space.
      if (!ds.unseen_labels) {
        throw std::invalid_argument(
            "gamma-cal auto needs labeled unseen instances");
      }
      Matrix val_feats(ds.feature_dim(),
                       ds.seen_features.cols() + ds.unseen_features.cols());
      val_feats << ds.seen_features, ds.unseen_features;
      const Matrix val_scores =
          model_scores(args.model, ds, val_feats, true);
      std::vector<int> val_labels = label_indices(ds.seen_labels);
      for (int lbl : label_indices(*ds.unseen_labels)) {
        val_labels.push_back(static_cast<int>(ds.num_seen()) + lbl);
      }
      const auto cal =
          zsmap::gzsl::select_gamma_ausuc(val_scores, val_labels, seen_mask);
      gamma = cal.gamma_cal;
      report["ausuc"] = cal.ausuc;
      report["gamma_cal"] = gamma;
      std::printf("calibration: gamma=%.6g ausuc=%.4f\n", gamma, cal.ausuc);
    } else {
      gamma = std::stod(args.gamma_cal);
    }
    pred = zsmap::gzsl::calibrated_stack(scores, seen_mask, gamma);
    report["gamma_cal"] = gamma;
  } else {
    pred = zsmap::eszsl::argmax_rows(scores);
  }

  std::ofstream out(args.out);
  if (!out) throw std::runtime_error("cannot write predictions: " + args.out);
  char buf[64];
  for (Eigen::Index r = 0; r < scores.rows(); ++r) {
    out << pred[static_cast<size_t>(r)];
    for (Eigen::Index c = 0; c < scores.cols(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", scores(r, c));
      out << ',' << buf;
    }
    out << '\n';
  }
  if (!args.report.empty()) write_json(args.report, report);
  std::printf("wrote %lld predictions to %s\n",
              static_cast<long long>(scores.rows()), args.out.c_str());
  return 0;
}

// ---- refine ---------------------------------------------------------------

struct RefineArgs {
  std::string data;
  std::string model;
  std::string out = "refined_labels.csv";
  std::string report;
  int k = 0;  // 0: max(1, n_t / 10)
  zsmap::refine::RefineOptions opts;
  bool one_step = false;
};

int cmd_refine(const RefineArgs& args) {
  const auto ds = zsmap::load_dataset(args.data);
  const auto model = zsmap::load_model(args.model);
  const Matrix& p0 = model.matrix("P");
  const int k = args.k > 0
                    ? args.k
                    : std::max(1, static_cast<int>(ds.unseen_features.cols() / 10));

  const auto result =
      zsmap::refine::refine_labels(ds.unseen_features, p0,
                                   ds.unseen_semantics, k, args.opts,
                                   args.one_step);
  zsmap::write_csv_matrix(args.out, result.labels);

  nlohmann::json report;
  report["k"] = k;
  report["iterations"] = result.moved_per_iteration.size();
  if (ds.unseen_labels) {
    const auto truth = label_indices(*ds.unseen_labels);
    std::vector<double> trace;
    for (const Matrix& labels : result.labels_per_iteration) {
      trace.push_back(zsmap::metrics::multiclass_accuracy(
          label_indices(labels), truth));
    }
    report["accuracy_trace"] = trace;
    report["final_accuracy"] = trace.empty() ? 0.0 : trace.back();
    std::printf("refine: %zu iterations, final accuracy %.4f\n",
                result.moved_per_iteration.size(),
                trace.empty() ? 0.0 : trace.back());
    std::printf("iter  accuracy\n");
    for (size_t i = 0; i < trace.size(); ++i) {
      std::printf("%4zu  %.4f\n", i + 1, trace[i]);
    }
  } else {
    std::printf("refine: %zu iterations\n", result.moved_per_iteration.size());
  }
  if (!args.report.empty()) write_json(args.report, report);
  return 0;
}

// ---- evaluate -------------------------------------------------------------

struct EvaluateArgs {
  std::string data;
  std::string model;
  std::string labels;  // alternative to model: one-hot label CSV
  std::string report;
  std::vector<int> hit_k;
  std::string hierarchy;
  std::string test_list;
};

int cmd_evaluate(const EvaluateArgs& args) {
  const auto ds = zsmap::load_dataset(args.data);
  if (!ds.unseen_labels) {
    throw std::invalid_argument("evaluate needs a dataset with unseen labels");
  }
  const auto truth = label_indices(*ds.unseen_labels);

  Matrix scores;
  std::vector<int> pred;
  if (!args.labels.empty()) {
    scores = zsmap::read_csv_matrix(args.labels);
    pred = label_indices(scores);
  } else if (!args.model.empty()) {
    scores = model_scores(args.model, ds, ds.unseen_features, false);
    pred = zsmap::eszsl::argmax_rows(scores);
  } else {
    throw std::invalid_argument("evaluate needs --model or --labels");
  }

  nlohmann::json report;
  const double acc = zsmap::metrics::multiclass_accuracy(pred, truth);
  report["accuracy"] = acc;
  std::printf("accuracy          %.4f\n", acc);
  for (int k : args.hit_k) {
    const double hit = zsmap::metrics::flat_hit_at_k(scores, truth, k);
    report["hit_at_k"][std::to_string(k)] = hit;
    std::printf("hit@%-3d           %.4f\n", k, hit);
  }
  if (!args.hierarchy.empty()) {
    if (args.test_list.empty()) {
      throw std::invalid_argument("--hierarchy needs --test-list");
    }
    const auto h =
        zsmap::metrics::LabelHierarchy::load(args.hierarchy, args.test_list);
    std::vector<std::string> truth_nodes;
    for (int t : truth) {
      truth_nodes.push_back(ds.unseen_categories[static_cast<size_t>(t)]);
    }
    for (int k : args.hit_k) {
      const double hp =
          zsmap::metrics::hierarchical_precision_at_k(scores, truth_nodes, k, h);
      report["hier_precision_at_k"][std::to_string(k)] = hp;
      std::printf("hier-precision@%-3d %.4f\n", k, hp);
    }
  }
  if (!args.report.empty()) write_json(args.report, report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Category-specific visual-semantic mapping for zero-shot classification"};
  app.require_subcommand(1);

  // generate
  zsmap::SyntheticSpec spec;
  std::string gen_out = "dataset.json";
  std::string gen_name = "synthetic";
  auto* gen = app.add_subcommand("generate", "Generate a synthetic dataset");
  gen->add_option("--out", gen_out, "Manifest output path");
  gen->add_option("--name", gen_name, "Dataset name");
  gen->add_option("--d", spec.feature_dim, "Feature dimension");
  gen->add_option("--a", spec.semantic_dim, "Semantic dimension");
  gen->add_option("--cs", spec.num_seen, "Seen categories");
  gen->add_option("--ct", spec.num_unseen, "Unseen categories");
  gen->add_option("--per-cat", spec.instances_per_category, "Instances per category");
  gen->add_option("--drift", spec.mapping_drift, "Mapping drift magnitude")
      ->check(CLI::NonNegativeNumber);
  gen->add_option("--noise", spec.noise_sigma, "Feature noise sigma")
      ->check(CLI::NonNegativeNumber);
  gen->add_option("--seed", spec.seed, "Random seed");

  // train
  TrainArgs train;
  auto* tr = app.add_subcommand("train", "Train a model");
  tr->add_option("--data", train.data, "Dataset manifest")->required();
  tr->add_option("--method", train.method, "eszsl | aezsl | aezsl-sim | daezsl");
  tr->add_option("--out", train.out, "Model output path");
  tr->add_option("--report", train.report, "JSON report path");
  tr->add_option("--gamma", train.gamma, "ESZSL gamma")->check(CLI::PositiveNumber);
  tr->add_option("--lambda", train.lambda, "ESZSL lambda")->check(CLI::PositiveNumber);
  tr->add_option("--lambda1", train.lambda1, "AEZSL lambda1");
  tr->add_option("--lambda2", train.lambda2, "AEZSL lambda2");
  tr->add_option("--lambda3", train.lambda3, "AEZSL lambda3");
  tr->add_option("--max-sweeps", train.max_sweeps, "AEZSL sweep cap");
  tr->add_option("--tol", train.tol, "AEZSL convergence tolerance");
  tr->add_option("--epochs", train.epochs, "DAEZSL epochs");
  tr->add_option("--batch", train.batch, "DAEZSL batch size");
  tr->add_option("--rate", train.rate, "DAEZSL learning rate");
  tr->add_option("--rho", train.rho, "DAEZSL hinge margin");
  tr->add_option("--hidden", train.hidden, "DAEZSL hidden size (0: (d+a)/2)");
  tr->add_option("--seed", train.seed, "Seed");
  tr->add_flag("--cv", train.cv, "Grid-search hyperparameters on a validation split");
  tr->add_flag("--gzsl", train.gzsl, "Learn mappings over the joint seen+unseen label space");
  tr->add_flag("--fixed-mask", train.fixed_mask, "DAEZSL with all-one masks (ESZSL-style)");
  tr->add_flag("--check-grad", train.check_grad, "Verify DAEZSL gradients and exit");

  // refine
  RefineArgs refine;
  auto* rf = app.add_subcommand("refine", "Progressive label refinement");
  rf->add_option("--data", refine.data, "Dataset manifest")->required();
  rf->add_option("--model", refine.model, "AEZSL model file")->required();
  rf->add_option("--out", refine.out, "Refined one-hot label CSV");
  rf->add_option("--report", refine.report, "JSON report path");
  rf->add_option("--k", refine.k, "Instances moved per iteration (0: n_t/10)");
  rf->add_option("--gamma1", refine.opts.gamma1, "Group-lasso weight");
  rf->add_option("--gamma2", refine.opts.gamma2, "Transition coherence weight");
  rf->add_option("--gamma3", refine.opts.gamma3, "Laplacian smoothness weight");
  rf->add_option("--k-nn", refine.opts.k_nn, "Laplacian neighbors");
  rf->add_flag("--one-step", refine.one_step, "Single non-progressive update");

  // predict
  PredictArgs predict;
  auto* pr = app.add_subcommand("predict", "Predict test labels and scores");
  pr->add_option("--data", predict.data, "Dataset manifest")->required();
  pr->add_option("--model", predict.model, "Model file")->required();
  pr->add_option("--out", predict.out, "Per-instance label,scores CSV");
  pr->add_option("--report", predict.report, "JSON report path");
  pr->add_flag("--gzsl", predict.gzsl, "Joint label space with calibrated stacking");
  pr->add_option("--gamma-cal", predict.gamma_cal, "Calibration threshold or 'auto'");

  // evaluate
  EvaluateArgs eval;
  auto* ev = app.add_subcommand("evaluate", "Evaluate predictions");
  ev->add_option("--data", eval.data, "Dataset manifest")->required();
  ev->add_option("--model", eval.model, "Model file");
  ev->add_option("--labels", eval.labels, "One-hot label CSV (e.g. refined labels)");
  ev->add_option("--report", eval.report, "JSON report path");
  ev->add_option("--hit-k", eval.hit_k, "Flat hit@K values");
  ev->add_option("--hierarchy", eval.hierarchy, "Hierarchy edge-list file");
  ev->add_option("--test-list", eval.test_list, "Test-category list file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      const auto ds = zsmap::generate_synthetic(spec);
      zsmap::save_dataset(gen_out, ds, gen_name);
      std::printf("dataset: d=%d a=%d seen=%d unseen=%d per-cat=%d -> %s\n",
                  spec.feature_dim, spec.semantic_dim, spec.num_seen,
                  spec.num_unseen, spec.instances_per_category,
                  gen_out.c_str());
      return 0;
    }
    if (tr->parsed()) return cmd_train(train);
    if (rf->parsed()) return cmd_refine(refine);
    if (pr->parsed()) return cmd_predict(predict);
    if (ev->parsed()) return cmd_evaluate(eval);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}

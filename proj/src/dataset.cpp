#include "zsmap/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "zsmap/rng.hpp"

namespace zsmap {

namespace {

void require_one_hot(const Matrix& labels, const std::string& name) {
  for (Eigen::Index r = 0; r < labels.rows(); ++r) {
    int ones = 0;
    for (Eigen::Index c = 0; c < labels.cols(); ++c) {
      const double v = labels(r, c);
      if (v == 1.0) {
        ++ones;
      } else if (v != 0.0) {
        throw std::invalid_argument(name + ": invalid one-hot label in row " +
                                    std::to_string(r));
      }
    }
    if (ones != 1) {
      throw std::invalid_argument(name + ": invalid one-hot label in row " +
                                  std::to_string(r));
    }
  }
}

}  // namespace

void ZslDataset::validate() const {
  require_finite(seen_features, "seen_features");
  require_finite(seen_labels, "seen_labels");
  require_finite(seen_semantics, "seen_semantics");
  require_finite(unseen_features, "unseen_features");
  require_finite(unseen_semantics, "unseen_semantics");

  const Eigen::Index d = seen_features.rows();
  const Eigen::Index a = seen_semantics.rows();
  if (unseen_features.rows() != d) {
    throw std::invalid_argument("feature dimension mismatch between splits");
  }
  if (unseen_semantics.rows() != a) {
    throw std::invalid_argument("semantic dimension mismatch between splits");
  }
  if (seen_labels.rows() != seen_features.cols() ||
      seen_labels.cols() != seen_semantics.cols()) {
    throw std::invalid_argument("seen_labels dimension mismatch");
  }
  require_one_hot(seen_labels, "seen_labels");
  if (unseen_labels) {
    require_finite(*unseen_labels, "unseen_labels");
    if (unseen_labels->rows() != unseen_features.cols() ||
        unseen_labels->cols() != unseen_semantics.cols()) {
      throw std::invalid_argument("unseen_labels dimension mismatch");
    }
    require_one_hot(*unseen_labels, "unseen_labels");
  }
  if (static_cast<Eigen::Index>(seen_categories.size()) !=
          seen_semantics.cols() ||
      static_cast<Eigen::Index>(unseen_categories.size()) !=
          unseen_semantics.cols()) {
    throw std::invalid_argument("category id list length mismatch");
  }
  std::set<std::string> seen_ids(seen_categories.begin(),
                                 seen_categories.end());
  if (seen_ids.size() != seen_categories.size()) {
    throw std::invalid_argument("duplicate seen category id");
  }
  for (const auto& id : unseen_categories) {
    if (seen_ids.count(id)) {
      throw std::invalid_argument("seen and unseen category ids overlap: " +
                                  id);
    }
  }
}

void SyntheticSpec::validate() const {
  if (feature_dim < 1 || semantic_dim < 1 || num_seen < 1 || num_unseen < 1 ||
      instances_per_category < 1) {
    throw std::invalid_argument("synthetic spec counts must be >= 1");
  }
  if (mapping_drift < 0.0 || noise_sigma < 0.0) {
    throw std::invalid_argument("drift and noise_sigma must be >= 0");
  }
}

ZslDataset generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  const int d = spec.feature_dim;
  const int a = spec.semantic_dim;
  const int cs = spec.num_seen;
  const int ct = spec.num_unseen;
  const int per = spec.instances_per_category;

  auto draw_prototype = [&]() {
    Vector p(a);
    for (int i = 0; i < a; ++i) p(i) = rng.uniform();
    const double n = p.norm();
    if (n == 0.0) p(0) = 1.0; else p /= n;
    return p;
  };

  Matrix seen_sem(a, cs), unseen_sem(a, ct);
  for (int c = 0; c < cs; ++c) seen_sem.col(c) = draw_prototype();
  for (int c = 0; c < ct; ++c) unseen_sem.col(c) = draw_prototype();

  Matrix w_star(d, a);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < a; ++j) w_star(i, j) = rng.normal();
  const double w_scale = w_star.norm();

  // Drift basis: Delta_c = sum_k a_c[k] * B_k, rescaled to ||W*||_F, so the
  // per-category perturbation varies smoothly with the semantic vector.
  std::vector<Matrix> basis(static_cast<size_t>(a));
  for (int k = 0; k < a; ++k) {
    basis[static_cast<size_t>(k)].resize(d, a);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < a; ++j) basis[static_cast<size_t>(k)](i, j) = rng.normal();
  }
  auto category_mapping = [&](const Vector& sem) {
    if (spec.mapping_drift == 0.0) return w_star;
    Matrix delta = Matrix::Zero(d, a);
    for (int k = 0; k < a; ++k) delta += sem(k) * basis[static_cast<size_t>(k)];
    const double n = delta.norm();
    if (n > 0.0) delta *= w_scale / n;
    return Matrix(w_star + spec.mapping_drift * delta);
  };

  auto fill_split = [&](const Matrix& sem, Matrix& feats, Matrix& labels) {
    const int cats = static_cast<int>(sem.cols());
    feats.resize(d, static_cast<Eigen::Index>(cats) * per);
    labels = Matrix::Zero(static_cast<Eigen::Index>(cats) * per, cats);
    for (int c = 0; c < cats; ++c) {
      const Matrix wc = category_mapping(sem.col(c));
      const Vector mean = wc * sem.col(c);
      for (int i = 0; i < per; ++i) {
        Vector x = mean;
        if (spec.noise_sigma > 0.0) {
          for (int j = 0; j < d; ++j) x(j) += spec.noise_sigma * rng.normal();
        }
        const Eigen::Index idx = static_cast<Eigen::Index>(c) * per + i;
        feats.col(idx) = x;
        labels(idx, c) = 1.0;
      }
    }
  };

  ZslDataset ds;
  ds.seen_semantics = seen_sem;
  ds.unseen_semantics = unseen_sem;
  fill_split(seen_sem, ds.seen_features, ds.seen_labels);
  Matrix unseen_labels;
  fill_split(unseen_sem, ds.unseen_features, unseen_labels);
  ds.unseen_labels = unseen_labels;
  for (int c = 0; c < cs; ++c) ds.seen_categories.push_back("s" + std::to_string(c));
  for (int c = 0; c < ct; ++c) ds.unseen_categories.push_back("u" + std::to_string(c));
  ds.validate();
  return ds;
}

namespace {

Matrix load_matrix_checked(const std::filesystem::path& base,
                           const std::string& rel, Eigen::Index rows,
                           Eigen::Index cols, const std::string& name) {
  Matrix m = read_csv_matrix(base / rel);
  if ((rows >= 0 && m.rows() != rows) || (cols >= 0 && m.cols() != cols)) {
    throw std::invalid_argument(name + ": dimension mismatch, got " +
                                std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()));
  }
  require_finite(m, name);
  return m;
}

}  // namespace

ZslDataset load_dataset(const std::filesystem::path& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) {
    throw std::invalid_argument("cannot open manifest: " +
                                manifest_path.string());
  }
  nlohmann::json j;
  in >> j;
  const auto base = manifest_path.parent_path();
  const auto& files = j.at("matrices");

  ZslDataset ds;
  ds.seen_categories = j.at("seen_categories").get<std::vector<std::string>>();
  ds.unseen_categories =
      j.at("unseen_categories").get<std::vector<std::string>>();
  const auto d = j.at("d").get<Eigen::Index>();
  const auto a = j.at("a").get<Eigen::Index>();
  const auto cs = static_cast<Eigen::Index>(ds.seen_categories.size());
  const auto ct = static_cast<Eigen::Index>(ds.unseen_categories.size());

  ds.seen_features = load_matrix_checked(base, files.at("seen_features"), d,
                                         -1, "seen_features");
  ds.seen_labels =
      load_matrix_checked(base, files.at("seen_labels"),
                          ds.seen_features.cols(), cs, "seen_labels");
  ds.seen_semantics = load_matrix_checked(base, files.at("seen_semantics"), a,
                                          cs, "seen_semantics");
  ds.unseen_features = load_matrix_checked(base, files.at("unseen_features"),
                                           d, -1, "unseen_features");
  ds.unseen_semantics = load_matrix_checked(
      base, files.at("unseen_semantics"), a, ct, "unseen_semantics");
  if (files.contains("unseen_labels")) {
    ds.unseen_labels =
        load_matrix_checked(base, files.at("unseen_labels"),
                            ds.unseen_features.cols(), ct, "unseen_labels");
  }
  ds.validate();
  return ds;
}

void save_dataset(const std::filesystem::path& manifest_path,
                  const ZslDataset& dataset, const std::string& name) {
  dataset.validate();
  const auto base = manifest_path.parent_path();
  const std::string stem = manifest_path.stem().string();
  if (!base.empty()) std::filesystem::create_directories(base);

  nlohmann::json files;
  auto put = [&](const std::string& key, const Matrix& m) {
    const std::string rel = stem + "_" + key + ".csv";
    write_csv_matrix(base / rel, m);
    files[key] = rel;
  };
  put("seen_features", dataset.seen_features);
  put("seen_labels", dataset.seen_labels);
  put("seen_semantics", dataset.seen_semantics);
  put("unseen_features", dataset.unseen_features);
  put("unseen_semantics", dataset.unseen_semantics);
  if (dataset.unseen_labels) put("unseen_labels", *dataset.unseen_labels);

  nlohmann::json j;
  j["name"] = name;
  j["d"] = dataset.feature_dim();
  j["a"] = dataset.semantic_dim();
  j["seen_categories"] = dataset.seen_categories;
  j["unseen_categories"] = dataset.unseen_categories;
  j["matrices"] = files;

  std::ofstream out(manifest_path);
  if (!out) {
    throw std::runtime_error("cannot write manifest: " +
                             manifest_path.string());
  }
  out << j.dump(2) << '\n';
}

ValidationSplit validation_split(const ZslDataset& dataset) {
  const auto cs = dataset.num_seen();
  const auto ct = dataset.num_unseen();
  if (cs < 2) {
    throw std::invalid_argument("validation_split needs at least 2 seen categories");
  }
  Eigen::Index cv = static_cast<Eigen::Index>(std::llround(
      static_cast<double>(cs) * static_cast<double>(ct) /
      static_cast<double>(cs + ct)));
  cv = std::max<Eigen::Index>(cv, 1);
  if (cv >= cs) {
    throw std::invalid_argument("degenerate validation split: all seen categories selected");
  }

  ValidationSplit split;
  for (Eigen::Index c = 0; c < cv; ++c) {
    split.validation_category_indices.push_back(static_cast<int>(c));
  }

  const auto d = dataset.feature_dim();
  const auto a = dataset.semantic_dim();
  const auto n = dataset.seen_features.cols();

  std::vector<Eigen::Index> val_rows, train_rows;
  std::vector<Eigen::Index> row_label(static_cast<size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index lbl = 0;
    dataset.seen_labels.row(i).maxCoeff(&lbl);
    row_label[static_cast<size_t>(i)] = lbl;
    (lbl < cv ? val_rows : train_rows).push_back(i);
  }

  ZslDataset& inner = split.inner;
  inner.seen_features.resize(d, static_cast<Eigen::Index>(train_rows.size()));
  inner.seen_labels = Matrix::Zero(static_cast<Eigen::Index>(train_rows.size()), cs - cv);
  for (size_t i = 0; i < train_rows.size(); ++i) {
    inner.seen_features.col(static_cast<Eigen::Index>(i)) =
        dataset.seen_features.col(train_rows[i]);
    inner.seen_labels(static_cast<Eigen::Index>(i),
                      row_label[static_cast<size_t>(train_rows[i])] - cv) = 1.0;
  }
  inner.seen_semantics = dataset.seen_semantics.rightCols(cs - cv);

  inner.unseen_features.resize(d, static_cast<Eigen::Index>(val_rows.size()));
  Matrix val_labels = Matrix::Zero(static_cast<Eigen::Index>(val_rows.size()), cv);
  for (size_t i = 0; i < val_rows.size(); ++i) {
    inner.unseen_features.col(static_cast<Eigen::Index>(i)) =
        dataset.seen_features.col(val_rows[i]);
    val_labels(static_cast<Eigen::Index>(i),
               row_label[static_cast<size_t>(val_rows[i])]) = 1.0;
  }
  inner.unseen_labels = val_labels;
  inner.unseen_semantics = dataset.seen_semantics.leftCols(cv);

  for (Eigen::Index c = cv; c < cs; ++c) {
    inner.seen_categories.push_back(dataset.seen_categories[static_cast<size_t>(c)]);
  }
  for (Eigen::Index c = 0; c < cv; ++c) {
    inner.unseen_categories.push_back(dataset.seen_categories[static_cast<size_t>(c)]);
  }
  (void)a;
  inner.validate();
  return split;
}

}  // namespace zsmap

#include "zsmap/daezsl.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "zsmap/rng.hpp"

namespace zsmap::daezsl {

namespace {

double sigmoid(double v) { return 1.0 / (1.0 + std::exp(-v)); }

int one_hot_label(const Matrix& labels, Eigen::Index row) {
  Eigen::Index lbl = 0;
  labels.row(row).maxCoeff(&lbl);
  return static_cast<int>(lbl);
}

}  // namespace

DaezslParams init_params(int feature_dim, int semantic_dim, int hidden_size,
                         uint64_t seed, double rho) {
  if (feature_dim < 1 || semantic_dim < 1) {
    throw std::invalid_argument("init_params: dimensions must be >= 1");
  }
  if (hidden_size <= 0) hidden_size = (feature_dim + semantic_dim) / 2;
  Rng rng(seed);
  auto fill = [&](Matrix& m, Eigen::Index rows, Eigen::Index cols,
                  int fan_in) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    m.resize(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < cols; ++c) {
        m(r, c) = bound * (2.0 * rng.uniform() - 1.0);
      }
    }
  };
  DaezslParams p;
  fill(p.hidden_weights, semantic_dim, hidden_size, semantic_dim);
  p.hidden_bias = Vector::Zero(hidden_size);
  fill(p.output_weights, hidden_size, feature_dim, hidden_size);
  p.output_bias = Vector::Zero(feature_dim);
  fill(p.mapping, feature_dim, semantic_dim, feature_dim);
  p.rho = rho;
  return p;
}

Matrix generate_masks(const DaezslParams& params, const Matrix& semantics) {
  if (semantics.rows() != params.semantic_dim()) {
    throw std::invalid_argument("generate_masks: semantic dim mismatch");
  }
  if (params.fixed_masks) {
    return Matrix::Ones(params.feature_dim(), semantics.cols());
  }
  Matrix v = params.hidden_weights.transpose() * semantics;
  v.colwise() += params.hidden_bias;
  Matrix h = v.cwiseMax(0.0);
  Matrix u = params.output_weights.transpose() * h;
  u.colwise() += params.output_bias;
  return u.unaryExpr([](double t) { return sigmoid(t); });
}

Matrix decision_matrix(const Vector& x, const Matrix& masks, const Matrix& w,
                       const Matrix& semantics) {
  if (x.size() != w.rows() || masks.rows() != w.rows() ||
      semantics.rows() != w.cols()) {
    throw std::invalid_argument("decision_matrix: dimension mismatch");
  }
  const Eigen::Index c = masks.cols();
  Matrix j(c, semantics.cols());
  for (Eigen::Index c1 = 0; c1 < c; ++c1) {
    j.row(c1) =
        (x.cwiseProduct(masks.col(c1))).transpose() * w * semantics;
  }
  return j;
}

DaezslLoss daezsl_loss(const Matrix& j, int true_label, double rho) {
  if (true_label < 0 || true_label >= j.cols()) {
    throw std::invalid_argument("daezsl_loss: label out of range");
  }
  if (rho < 0.0) {
    throw std::invalid_argument("daezsl_loss: rho must be >= 0");
  }
  DaezslLoss loss;
  for (Eigen::Index c1 = 0; c1 < j.rows(); ++c1) {
    for (Eigen::Index c2 = 0; c2 < j.cols(); ++c2) {
      const double target = (c2 == true_label) ? 1.0 : 0.0;
      const double diff = j(c1, c2) - target;
      loss.square_term += diff * diff;
    }
  }
  const double jt = j(true_label, true_label);
  for (Eigen::Index c1 = 0; c1 < j.rows(); ++c1) {
    if (c1 == true_label) continue;
    loss.hinge_term += std::max(0.0, j(c1, true_label) - jt + rho);
  }
  return loss;
}

Gradients batch_gradients(const DaezslParams& params, const Matrix& features,
                          const std::vector<int>& labels,
                          const Matrix& semantics, double& loss_out,
                          bool train_masks) {
  const Eigen::Index d = params.feature_dim();
  const Eigen::Index a = params.semantic_dim();
  const Eigen::Index h = params.hidden_size();
  const Eigen::Index c = semantics.cols();
  if (features.rows() != d ||
      static_cast<Eigen::Index>(labels.size()) != features.cols()) {
    throw std::invalid_argument("batch_gradients: dimension mismatch");
  }

  // Masks depend only on the semantics, so the forward pass through the
  // mask network is shared by the whole batch.
  Matrix v, hidden;
  Matrix masks;
  if (params.fixed_masks || !train_masks) {
    masks = Matrix::Ones(d, c);
  } else {
    v = params.hidden_weights.transpose() * semantics;
    v.colwise() += params.hidden_bias;
    hidden = v.cwiseMax(0.0);
    Matrix u = params.output_weights.transpose() * hidden;
    u.colwise() += params.output_bias;
    masks = u.unaryExpr([](double t) { return sigmoid(t); });
  }

  Gradients g;
  g.hidden_weights = Matrix::Zero(a, h);
  g.hidden_bias = Vector::Zero(h);
  g.output_weights = Matrix::Zero(h, d);
  g.output_bias = Vector::Zero(d);
  g.mapping = Matrix::Zero(d, a);
  Matrix d_masks = Matrix::Zero(d, c);

  const Matrix wa = params.mapping * semantics;  // d x C
  loss_out = 0.0;
  for (Eigen::Index i = 0; i < features.cols(); ++i) {
    const Vector& x = features.col(i);
    const int c0 = labels[static_cast<size_t>(i)];
    if (c0 < 0 || c0 >= c) {
      throw std::invalid_argument("batch_gradients: label out of range");
    }
    Matrix f(c, d);  // row c1 = (x o m_{c1})'
    for (Eigen::Index c1 = 0; c1 < c; ++c1) {
      f.row(c1) = x.cwiseProduct(masks.col(c1)).transpose();
    }
    Matrix j = f * wa;
    const DaezslLoss loss = daezsl_loss(j, c0, params.rho);
    loss_out += loss.total();

    Matrix dj = 2.0 * j;
    for (Eigen::Index c1 = 0; c1 < c; ++c1) dj(c1, c0) -= 2.0;
    const double jt = j(c0, c0);
    for (Eigen::Index c1 = 0; c1 < c; ++c1) {
      if (c1 == c0) continue;
      if (j(c1, c0) - jt + params.rho > 0.0) {
        dj(c1, c0) += 1.0;
        dj(c0, c0) -= 1.0;
      }
    }

    g.mapping += f.transpose() * dj * semantics.transpose();
    if (train_masks && !params.fixed_masks) {
      const Matrix df = dj * wa.transpose();  // C x d
      for (Eigen::Index c1 = 0; c1 < c; ++c1) {
        d_masks.col(c1) += x.cwiseProduct(df.row(c1).transpose());
      }
    }
  }

  if (train_masks && !params.fixed_masks) {
    Matrix du =
        d_masks.array() * masks.array() * (1.0 - masks.array());
    g.output_weights = hidden * du.transpose();
    g.output_bias = du.rowwise().sum();
    Matrix dh = params.output_weights * du;
    Matrix dv = (v.array() > 0.0).select(dh, 0.0);
    g.hidden_weights = semantics * dv.transpose();
    g.hidden_bias = dv.rowwise().sum();
  }
  return g;
}

TrainResult train_daezsl(const ZslDataset& dataset, const TrainOptions& opts) {
  if (opts.epochs < 0 || opts.batch_size < 1 || opts.learning_rate < 0.0) {
    throw std::invalid_argument("train_daezsl: invalid hyperparameters");
  }
  const Matrix& x = dataset.seen_features;
  const Matrix& a = dataset.seen_semantics;
  const Eigen::Index n = x.cols();

  TrainResult result;
  result.params =
      init_params(static_cast<int>(x.rows()), static_cast<int>(a.rows()),
                  opts.hidden_size, opts.seed, opts.rho);
  result.params.fixed_masks = !opts.train_masks;
  DaezslParams& p = result.params;

  std::vector<int> labels(static_cast<size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    labels[static_cast<size_t>(i)] = one_hot_label(dataset.seen_labels, i);
  }

  Gradients acc;  // AdaGrad squared-gradient accumulators
  acc.hidden_weights = Matrix::Zero(p.hidden_weights.rows(), p.hidden_weights.cols());
  acc.hidden_bias = Vector::Zero(p.hidden_bias.size());
  acc.output_weights = Matrix::Zero(p.output_weights.rows(), p.output_weights.cols());
  acc.output_bias = Vector::Zero(p.output_bias.size());
  acc.mapping = Matrix::Zero(p.mapping.rows(), p.mapping.cols());

  Rng shuffle_rng(opts.seed + 0x9e3779b97f4a7c15ULL);
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);

  constexpr double kAdaEps = 1e-8;
  auto apply = [&](auto& param, auto& accum, const auto& grad) {
    accum.array() += grad.array().square();
    param.array() -= opts.learning_rate * grad.array() /
                     (accum.array().sqrt() + kAdaEps);
  };

  for (int epoch = 0; epoch < opts.epochs; ++epoch) {
    // Fisher-Yates with the portable generator keeps runs reproducible.
    for (size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[static_cast<size_t>(shuffle_rng.index(i))]);
    }
    double epoch_loss = 0.0;
    for (Eigen::Index start = 0; start < n; start += opts.batch_size) {
      const Eigen::Index count =
          std::min<Eigen::Index>(opts.batch_size, n - start);
      Matrix batch(x.rows(), count);
      std::vector<int> batch_labels(static_cast<size_t>(count));
      for (Eigen::Index i = 0; i < count; ++i) {
        const int idx = order[static_cast<size_t>(start + i)];
        batch.col(i) = x.col(idx);
        batch_labels[static_cast<size_t>(i)] = labels[static_cast<size_t>(idx)];
      }
      double batch_loss = 0.0;
      Gradients g = batch_gradients(p, batch, batch_labels, a, batch_loss,
                                    opts.train_masks);
      if (!std::isfinite(batch_loss)) {
        throw std::runtime_error(
            "train_daezsl: non-finite loss, lower the learning rate");
      }
      epoch_loss += batch_loss;
      apply(p.mapping, acc.mapping, g.mapping);
      if (opts.train_masks) {
        apply(p.hidden_weights, acc.hidden_weights, g.hidden_weights);
        apply(p.hidden_bias, acc.hidden_bias, g.hidden_bias);
        apply(p.output_weights, acc.output_weights, g.output_weights);
        apply(p.output_bias, acc.output_bias, g.output_bias);
      }
    }
    result.loss_trace.push_back(epoch_loss / static_cast<double>(n));
  }
  return result;
}

int predict_daezsl(const DaezslParams& params, const Vector& x,
                   const Matrix& unseen_semantics) {
  const Matrix masks = generate_masks(params, unseen_semantics);
  const Matrix j = decision_matrix(x, masks, params.mapping, unseen_semantics);
  int best = 0;
  for (Eigen::Index c = 1; c < j.cols(); ++c) {
    if (j(c, c) > j(best, best)) best = static_cast<int>(c);
  }
  return best;
}

void save_params(const std::filesystem::path& path, const DaezslParams& p) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write checkpoint: " + path.string());
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", p.rho);
  out << "daezsl-params v1 " << p.hidden_size() << ' ' << p.feature_dim()
      << ' ' << p.semantic_dim() << ' ' << buf << ' '
      << (p.fixed_masks ? 1 : 0) << '\n';
  auto block = [&](const Matrix& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        std::snprintf(buf, sizeof(buf), "%.17g", m(r, c));
        out << buf << (c + 1 < m.cols() ? ',' : '\n');
      }
    }
  };
  block(p.hidden_weights);
  block(p.hidden_bias.transpose());
  block(p.output_weights);
  block(p.output_bias.transpose());
  block(p.mapping);
}

DaezslParams load_params(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open checkpoint: " + path.string());
  }
  std::string magic, version;
  Eigen::Index h, d, a;
  double rho;
  int fixed;
  in >> magic >> version >> h >> d >> a >> rho >> fixed;
  if (magic != "daezsl-params" || version != "v1" || !in) {
    throw std::invalid_argument("bad checkpoint header: " + path.string());
  }
  in.ignore();
  auto block = [&](Eigen::Index rows, Eigen::Index cols) {
    Matrix m(rows, cols);
    std::string line;
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (!std::getline(in, line)) {
        throw std::invalid_argument("truncated checkpoint: " + path.string());
      }
      std::stringstream ss(line);
      std::string cell;
      for (Eigen::Index c = 0; c < cols; ++c) {
        if (!std::getline(ss, cell, ',')) {
          throw std::invalid_argument("truncated checkpoint row");
        }
        m(r, c) = std::stod(cell);
      }
    }
    return m;
  };
  DaezslParams p;
  p.hidden_weights = block(a, h);
  p.hidden_bias = block(1, h).transpose();
  p.output_weights = block(h, d);
  p.output_bias = block(1, d).transpose();
  p.mapping = block(d, a);
  p.rho = rho;
  p.fixed_masks = fixed != 0;
  return p;
}

}  // namespace zsmap::daezsl

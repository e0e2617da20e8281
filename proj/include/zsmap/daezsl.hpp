#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "zsmap/dataset.hpp"
#include "zsmap/matrix.hpp"

namespace zsmap::daezsl {

/// Mask-generator network (one hidden rectifier layer, sigmoid output)
/// plus the shared visual-semantic mapping W.
struct DaezslParams {
  Matrix hidden_weights;  // a x h
  Vector hidden_bias;     // h
  Matrix output_weights;  // h x d
  Vector output_bias;     // d
  Matrix mapping;         // W, d x a
  double rho = 0.5;       // hinge margin
  bool fixed_masks = false;  // all-one masks, mask network unused

  Eigen::Index hidden_size() const { return hidden_bias.size(); }
  Eigen::Index feature_dim() const { return mapping.rows(); }
  Eigen::Index semantic_dim() const { return mapping.cols(); }
};

/// Seeded uniform initialization in [-1/sqrt(fan_in), 1/sqrt(fan_in)].
/// hidden_size <= 0 selects floor((d + a) / 2).
DaezslParams init_params(int feature_dim, int semantic_dim, int hidden_size,
                         uint64_t seed, double rho = 0.5);

/// Column c = sigmoid(output layer(relu(hidden layer(a_c)))); entries in (0,1).
Matrix generate_masks(const DaezslParams& params, const Matrix& semantics);

/// C x C decision matrix: entry (c1, c2) = (x o m_{c1})' W a_{c2}.
Matrix decision_matrix(const Vector& x, const Matrix& masks, const Matrix& w,
                       const Matrix& semantics);

struct DaezslLoss {
  double square_term = 0.0;
  double hinge_term = 0.0;
  double total() const { return square_term + hinge_term; }
};

/// Square term ||J - Ybar||_F^2 (Ybar stacks the one-hot row C times) plus
/// the margin hinge over the ground-truth column.
DaezslLoss daezsl_loss(const Matrix& j, int true_label, double rho);

struct Gradients {
  Matrix hidden_weights;
  Vector hidden_bias;
  Matrix output_weights;
  Vector output_bias;
  Matrix mapping;
};

/// Analytic gradient of the summed per-instance loss over a batch of
/// feature columns with one-hot labels. With train_masks off, the mask
/// network gradients are zero and masks are frozen at all-ones.
Gradients batch_gradients(const DaezslParams& params, const Matrix& features,
                          const std::vector<int>& labels,
                          const Matrix& semantics, double& loss_out,
                          bool train_masks = true);

struct TrainOptions {
  int epochs = 50;
  int batch_size = 16;
  double learning_rate = 0.01;
  double rho = 0.5;
  uint64_t seed = 0;
  int hidden_size = 0;       // <= 0: floor((d+a)/2)
  bool train_masks = true;   // off: fixed all-one masks, only W trained
};

struct TrainResult {
  DaezslParams params;
  std::vector<double> loss_trace;  // mean loss per epoch
};

/// Mini-batch AdaGrad on the generalizability+specificity loss with
/// analytically derived gradients. Deterministic for a fixed seed.
TrainResult train_daezsl(const ZslDataset& dataset, const TrainOptions& opts);

/// Argmax over the diagonal of the decision matrix built from the unseen
/// semantics' masks; ties to the lowest index.
int predict_daezsl(const DaezslParams& params, const Vector& x,
                   const Matrix& unseen_semantics);

/// Checkpoint: CSV blocks with a header line carrying h, d, a and rho.
void save_params(const std::filesystem::path& path, const DaezslParams& p);
DaezslParams load_params(const std::filesystem::path& path);

}  // namespace zsmap::daezsl

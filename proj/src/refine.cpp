#include "zsmap/refine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "zsmap/aezsl.hpp"

namespace zsmap::refine {

namespace {
constexpr double kRowNormFloor = 1e-10;  // guards 1/(2||q_i||) at q_i = 0
}

std::pair<double, int> confidence(const Matrix& p, const Vector& x) {
  if (p.rows() != x.size()) {
    throw std::invalid_argument("confidence: dimension mismatch");
  }
  Vector scores = p.transpose() * x;
  int label = 0;
  for (Eigen::Index c = 1; c < scores.size(); ++c) {
    if (scores(c) > scores(label)) label = static_cast<int>(c);
  }
  const double m = scores.maxCoeff();
  double denom = 0.0;
  for (Eigen::Index c = 0; c < scores.size(); ++c) {
    denom += std::exp(scores(c) - m);
  }
  return {std::exp(scores(label) - m) / denom, label};
}

Matrix build_transition(const Matrix& unseen_semantics) {
  const Eigen::Index c = unseen_semantics.cols();
  Matrix t = Matrix::Zero(c, c);
  for (Eigen::Index i = 0; i < c; ++i) {
    for (Eigen::Index j = i + 1; j < c; ++j) {
      const double s = aezsl::cosine_similarity(unseen_semantics.col(i),
                                                unseen_semantics.col(j));
      t(i, j) = s;
      t(j, i) = s;
    }
  }
  return t;
}

Matrix build_laplacian(const Matrix& features, int k_nn, double sigma) {
  const Eigen::Index n = features.cols();
  if (n < 2) {
    throw std::invalid_argument("build_laplacian: need at least 2 instances");
  }
  if (k_nn < 1 || k_nn >= n) {
    throw std::invalid_argument("build_laplacian: k_nn must be in [1, n)");
  }
  Matrix dist2(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    dist2(i, i) = 0.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double d2 = (features.col(i) - features.col(j)).squaredNorm();
      dist2(i, j) = d2;
      dist2(j, i) = d2;
    }
  }

  // Union-symmetrized k-NN adjacency.
  Eigen::MatrixXi adj = Eigen::MatrixXi::Zero(n, n);
  std::vector<Eigen::Index> order(static_cast<size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) {
                       return dist2(i, a) < dist2(i, b);
                     });
    int taken = 0;
    for (Eigen::Index j : order) {
      if (j == i) continue;
      adj(i, j) = 1;
      adj(j, i) = 1;
      if (++taken == k_nn) break;
    }
  }

  if (sigma <= 0.0) {
    std::vector<double> dists;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        if (adj(i, j)) dists.push_back(std::sqrt(dist2(i, j)));
      }
    }
    std::sort(dists.begin(), dists.end());
    sigma = dists.empty() ? 0.0 : dists[dists.size() / 2];
  }

  Matrix aff = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (!adj(i, j)) continue;
      double w;
      if (dist2(i, j) == 0.0) {
        w = 1.0;
      } else if (sigma > 0.0) {
        w = std::exp(-dist2(i, j) / (2.0 * sigma * sigma));
      } else {
        w = 0.0;
      }
      aff(i, j) = w;
      aff(j, i) = w;
    }
  }
  Matrix h = Matrix(aff.rowwise().sum().asDiagonal()) - aff;
  return h;
}

double refine_objective(const Matrix& xl, const Matrix& yl, const Matrix& xu,
                        const Matrix& yu, const Matrix& transition,
                        const Matrix& laplacian, const Matrix& p,
                        const RefineOptions& opts) {
  double obj = 0.0;
  if (xl.cols() > 0) {
    obj += 0.5 * (xl.transpose() * p - yl).squaredNorm();
  }
  if (xu.cols() > 0) {
    Matrix q = xu.transpose() * p - yu;
    double l21 = 0.0;
    for (Eigen::Index i = 0; i < q.rows(); ++i) l21 += q.row(i).norm();
    obj += 0.5 * opts.gamma1 * l21;
    obj -= opts.gamma2 *
           ((xu.transpose() * p).array() * (yu * transition).array()).sum();
    obj += 0.5 * opts.gamma3 *
           (p.transpose() * xu * laplacian * xu.transpose() * p).trace();
  }
  return obj;
}

UpdateResult update_p(const Matrix& xl, const Matrix& yl, const Matrix& xu,
                      const Matrix& yu, const Matrix& transition,
                      const Matrix& laplacian, const RefineOptions& opts) {
  if (opts.gamma1 < 0.0 || opts.gamma2 < 0.0 || opts.gamma3 < 0.0 ||
      opts.nu <= 0.0) {
    throw std::invalid_argument("update_p: gammas must be >= 0 and nu > 0");
  }
  const Eigen::Index d = xl.cols() > 0 ? xl.rows() : xu.rows();
  const Eigen::Index c = xl.cols() > 0 ? yl.cols() : yu.cols();

  const bool has_u = xu.cols() > 0;
  Matrix g_fixed = opts.nu * Matrix::Identity(d, d);
  Matrix b_fixed = Matrix::Zero(d, c);
  if (xl.cols() > 0) {
    g_fixed += xl * xl.transpose();
    b_fixed += xl * yl;
  }
  if (has_u) {
    g_fixed += opts.gamma3 * xu * laplacian * xu.transpose();
    b_fixed += opts.gamma2 * xu * yu * transition;
  }

  UpdateResult result;
  result.p = Matrix::Zero(d, c);
  double prev = refine_objective(xl, yl, xu, yu, transition, laplacian,
                                 result.p, opts);
  for (int iter = 0; iter < opts.max_inner; ++iter) {
    Matrix g = g_fixed;
    Matrix b = b_fixed;
    if (has_u) {
      Matrix q = xu.transpose() * result.p - yu;
      Vector dvec(q.rows());
      for (Eigen::Index i = 0; i < q.rows(); ++i) {
        dvec(i) = 1.0 / (2.0 * std::max(q.row(i).norm(), kRowNormFloor));
      }
      g += opts.gamma1 * xu * dvec.asDiagonal() * xu.transpose();
      b += opts.gamma1 * xu * dvec.asDiagonal() * yu;
    }
    Eigen::LDLT<Matrix> ldlt(g);
    if (ldlt.info() != Eigen::Success) {
      throw std::runtime_error("update_p: singular system, nu too small");
    }
    result.p = ldlt.solve(b);
    const double cur = refine_objective(xl, yl, xu, yu, transition, laplacian,
                                        result.p, opts);
    result.objective_trace.push_back(cur);
    if (std::abs(prev - cur) < opts.tol * std::max(1.0, std::abs(prev))) break;
    prev = cur;
    if (!has_u) break;  // no reweighting to iterate on
  }
  return result;
}

RefineResult refine_labels(const Matrix& test_features,
                           const Matrix& initial_p,
                           const Matrix& unseen_semantics, int k,
                           const RefineOptions& opts, bool one_step) {
  if (k < 1) {
    throw std::invalid_argument("refine_labels: k must be >= 1");
  }
  const Eigen::Index n = test_features.cols();
  const Eigen::Index c = unseen_semantics.cols();
  RefineResult result;
  result.classifiers = initial_p;
  result.labels = Matrix::Zero(n, c);
  if (n == 0) return result;

  const Matrix transition = build_transition(unseen_semantics);

  Matrix labels = Matrix::Zero(n, c);
  for (Eigen::Index i = 0; i < n; ++i) {
    labels(i, confidence(initial_p, test_features.col(i)).second) = 1.0;
  }

  auto solve_partition = [&](const std::vector<int>& confident,
                             const std::vector<int>& unconfident) {
    Matrix xl(test_features.rows(), static_cast<Eigen::Index>(confident.size()));
    Matrix yl(static_cast<Eigen::Index>(confident.size()), c);
    for (size_t i = 0; i < confident.size(); ++i) {
      xl.col(static_cast<Eigen::Index>(i)) = test_features.col(confident[i]);
      yl.row(static_cast<Eigen::Index>(i)) = labels.row(confident[i]);
    }
    Matrix xu(test_features.rows(), static_cast<Eigen::Index>(unconfident.size()));
    Matrix yu(static_cast<Eigen::Index>(unconfident.size()), c);
    for (size_t i = 0; i < unconfident.size(); ++i) {
      xu.col(static_cast<Eigen::Index>(i)) = test_features.col(unconfident[i]);
      yu.row(static_cast<Eigen::Index>(i)) = labels.row(unconfident[i]);
    }
    Matrix laplacian;
    if (xu.cols() >= 2) {
      laplacian = build_laplacian(
          xu, std::min<int>(opts.k_nn, static_cast<int>(xu.cols()) - 1),
          opts.sigma);
    } else {
      laplacian = Matrix::Zero(xu.cols(), xu.cols());
    }
    return update_p(xl, yl, xu, yu, transition, laplacian, opts);
  };

  if (one_step) {
    std::vector<int> all(static_cast<size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    UpdateResult upd = solve_partition({}, all);
    result.classifiers = upd.p;
    result.labels = Matrix::Zero(n, c);
    for (Eigen::Index i = 0; i < n; ++i) {
      result.labels(i, confidence(upd.p, test_features.col(i)).second) = 1.0;
    }
    result.moved_per_iteration.push_back(all);
    result.p_per_iteration.push_back(upd.p);
    result.labels_per_iteration.push_back(result.labels);
    return result;
  }

  std::vector<bool> is_confident(static_cast<size_t>(n), false);
  std::vector<int> confident;
  Eigen::Index remaining = n;
  while (remaining > 0) {
    // Rank the unconfident set by confidence under the current P.
    std::vector<std::pair<double, int>> ranked;
    for (int i = 0; i < n; ++i) {
      if (is_confident[static_cast<size_t>(i)]) continue;
      ranked.emplace_back(
          confidence(result.classifiers, test_features.col(i)).first, i);
    }
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) {
                       return a.first > b.first;
                     });
    const size_t take = std::min<size_t>(static_cast<size_t>(k), ranked.size());
    std::vector<int> moved;
    for (size_t i = 0; i < take; ++i) {
      const int idx = ranked[i].second;
      is_confident[static_cast<size_t>(idx)] = true;
      labels.row(idx).setZero();
      labels(idx, confidence(result.classifiers, test_features.col(idx)).second) = 1.0;
      confident.push_back(idx);
      moved.push_back(idx);
      --remaining;
    }
    std::vector<int> unconfident;
    for (int i = 0; i < n; ++i) {
      if (!is_confident[static_cast<size_t>(i)]) unconfident.push_back(i);
    }
    UpdateResult upd = solve_partition(confident, unconfident);
    result.classifiers = upd.p;
    result.moved_per_iteration.push_back(std::move(moved));
    result.p_per_iteration.push_back(upd.p);
    result.labels_per_iteration.push_back(labels);
  }
  result.labels = labels;
  return result;
}

}  // namespace zsmap::refine

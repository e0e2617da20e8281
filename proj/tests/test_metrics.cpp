#include <filesystem>
#include <fstream>
#include <set>

#include "doctest.h"
#include "test_util.hpp"
#include "zsmap/metrics.hpp"

using zsmap::Matrix;
using zsmap::Vector;
namespace metrics = zsmap::metrics;

namespace {

// Brute-force hit@k: count how many of the k best-or-tied scores precede the
// truth column when sorting by (score desc, index asc).
bool truth_in_top_k(const Vector& row, int truth, int k) {
  int better = 0;
  for (Eigen::Index c = 0; c < row.size(); ++c) {
    if (c == truth) continue;
    if (row(c) > row(truth) || (row(c) == row(truth) && c < truth)) ++better;
  }
  return better < k;
}

std::filesystem::path write_temp(const std::string& name,
                                 const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << body;
  return path;
}

}  // namespace

TEST_CASE("multiclass_accuracy basics") {
  CHECK(metrics::multiclass_accuracy({1, 2, 3}, {1, 2, 3}) == 1.0);
  CHECK(metrics::multiclass_accuracy({1, 2, 3}, {3, 2, 1}) ==
        doctest::Approx(1.0 / 3.0));
  CHECK(metrics::multiclass_accuracy({0, 0}, {1, 1}) == 0.0);
  CHECK_THROWS_AS(metrics::multiclass_accuracy({1}, {1, 2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(metrics::multiclass_accuracy({}, {}), std::invalid_argument);
}

TEST_CASE("top_k_indices: ordering and tie-breaking") {
  Vector s(4);
  s << 0.5, 0.9, 0.5, 0.1;
  CHECK(metrics::top_k_indices(s, 1) == std::vector<int>{1});
  CHECK(metrics::top_k_indices(s, 2) == std::vector<int>{1, 0});  // tie -> 0
  CHECK(metrics::top_k_indices(s, 4) == std::vector<int>{1, 0, 2, 3});
}

TEST_CASE("flat_hit_at_k: hit@1 equals argmax accuracy exactly") {
  zsmap::Rng rng(81);
  const Matrix scores = test_util::random_matrix(rng, 25, 6);
  std::vector<int> truth, argmax;
  for (Eigen::Index r = 0; r < scores.rows(); ++r) {
    truth.push_back(static_cast<int>(rng.index(6)));
    Eigen::Index best = 0;
    scores.row(r).maxCoeff(&best);
    argmax.push_back(static_cast<int>(best));
  }
  CHECK(metrics::flat_hit_at_k(scores, truth, 1) ==
        metrics::multiclass_accuracy(argmax, truth));
}

TEST_CASE("flat_hit_at_k: non-decreasing in K, K=C gives 1") {
  zsmap::Rng rng(82);
  const Matrix scores = test_util::random_matrix(rng, 20, 6);
  std::vector<int> truth;
  for (int i = 0; i < 20; ++i) truth.push_back(i % 6);
  double prev = 0.0;
  for (int k = 1; k <= 6; ++k) {
    const double h = metrics::flat_hit_at_k(scores, truth, k);
    CHECK(h >= prev);
    prev = h;
  }
  CHECK(prev == 1.0);
  CHECK_THROWS_AS(metrics::flat_hit_at_k(scores, truth, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(metrics::flat_hit_at_k(scores, truth, 7),
                  std::invalid_argument);
}

TEST_CASE("flat_hit_at_k matches the brute-force oracle") {
  zsmap::Rng rng(83);
  Matrix scores = test_util::random_matrix(rng, 20, 6);
  // Inject exact ties so the tie rule is exercised.
  scores(0, 1) = scores(0, 4);
  scores(5, 0) = scores(5, 5);
  std::vector<int> truth;
  for (int i = 0; i < 20; ++i) truth.push_back(static_cast<int>(rng.index(6)));
  for (int k = 1; k <= 6; ++k) {
    double expect = 0.0;
    for (Eigen::Index r = 0; r < scores.rows(); ++r) {
      if (truth_in_top_k(scores.row(r).transpose(),
                         truth[static_cast<size_t>(r)], k)) {
        expect += 1.0;
      }
    }
    expect /= static_cast<double>(scores.rows());
    CHECK(metrics::flat_hit_at_k(scores, truth, k) == expect);
  }
}

TEST_CASE("flat_hit_at_k invariant under monotone score transforms") {
  zsmap::Rng rng(84);
  const Matrix scores = test_util::random_matrix(rng, 15, 5);
  std::vector<int> truth;
  for (int i = 0; i < 15; ++i) truth.push_back(i % 5);
  const Matrix warped = (3.0 * scores).array() + 7.0;
  for (int k = 1; k <= 5; ++k) {
    CHECK(metrics::flat_hit_at_k(scores, truth, k) ==
          metrics::flat_hit_at_k(warped, truth, k));
  }
}

TEST_CASE("feasible_set: binary tree expansion by radius") {
  // root -> {l, r}; l -> {ll, lr}; r -> {rl, rr}. Test leaves: ll lr rl rr
  // with indices 0..3.
  metrics::LabelHierarchy h;
  h.add_edge("root", "l");
  h.add_edge("root", "r");
  h.add_edge("l", "ll");
  h.add_edge("l", "lr");
  h.add_edge("r", "rl");
  h.add_edge("r", "rr");
  h.mark_test_category("ll", 0);
  h.mark_test_category("lr", 1);
  h.mark_test_category("rl", 2);
  h.mark_test_category("rr", 3);
  h.validate();

  CHECK(h.feasible_set("ll", 1) == std::vector<int>{0});
  // k=2: radius grows to 2 (via l) and picks up the sibling lr only.
  CHECK(h.feasible_set("ll", 2) == std::vector<int>{0, 1});
  // k=3: the next radius reaches rl and rr together; overshoot is kept.
  CHECK(h.feasible_set("ll", 3) == std::vector<int>{0, 1, 2, 3});
  // Interior truth node: nearest test categories are its two children.
  CHECK(h.feasible_set("l", 2) == std::vector<int>{0, 1});
  CHECK_THROWS_AS(h.feasible_set("nope", 1), std::invalid_argument);
}

TEST_CASE("hierarchical_precision_at_k on the binary tree") {
  metrics::LabelHierarchy h;
  h.add_edge("root", "l");
  h.add_edge("root", "r");
  h.add_edge("l", "ll");
  h.add_edge("l", "lr");
  h.add_edge("r", "rl");
  h.add_edge("r", "rr");
  h.mark_test_category("ll", 0);
  h.mark_test_category("lr", 1);
  h.mark_test_category("rl", 2);
  h.mark_test_category("rr", 3);

  // Scores over the four test categories; row truths are ll and rl.
  Matrix scores(2, 4);
  scores << 0.9, 0.8, 0.1, 0.0,   // top-2 = {0, 1}, feasible(ll,2) = {0, 1}
            0.9, 0.8, 0.1, 0.0;   // top-2 = {0, 1}, feasible(rl,2) = {2, 3}
  const double hp =
      metrics::hierarchical_precision_at_k(scores, {"ll", "rl"}, 2, h);
  CHECK(hp == doctest::Approx((2.0 / 2.0 + 0.0 / 2.0) / 2.0));

  // K=1 must coincide with flat hit@1 when every truth node is a test
  // category with a distinct index.
  zsmap::Rng rng(85);
  const Matrix rs = test_util::random_matrix(rng, 12, 4);
  std::vector<std::string> names;
  std::vector<int> truth;
  const std::vector<std::string> leaves = {"ll", "lr", "rl", "rr"};
  for (int i = 0; i < 12; ++i) {
    names.push_back(leaves[static_cast<size_t>(i % 4)]);
    truth.push_back(i % 4);
  }
  CHECK(metrics::hierarchical_precision_at_k(rs, names, 1, h) ==
        metrics::flat_hit_at_k(rs, truth, 1));
}

TEST_CASE("hierarchical precision: star hierarchy with k=C is 1") {
  metrics::LabelHierarchy h;
  for (int i = 0; i < 5; ++i) {
    const std::string leaf = "c" + std::to_string(i);
    h.add_edge("hub", leaf);
    h.mark_test_category(leaf, i);
  }
  zsmap::Rng rng(86);
  const Matrix scores = test_util::random_matrix(rng, 10, 5);
  std::vector<std::string> names(10, "c2");
  CHECK(metrics::hierarchical_precision_at_k(scores, names, 5, h) == 1.0);
}

TEST_CASE("validate rejects directed cycles") {
  metrics::LabelHierarchy h;
  h.add_edge("a", "b");
  h.add_edge("b", "c");
  h.add_edge("c", "a");
  CHECK_THROWS_AS(h.validate(), std::invalid_argument);

  metrics::LabelHierarchy dag;
  dag.add_edge("a", "b");
  dag.add_edge("a", "c");
  dag.add_edge("b", "d");
  dag.add_edge("c", "d");  // diamond: undirected cycle, directed DAG
  CHECK_NOTHROW(dag.validate());
}

TEST_CASE("LabelHierarchy::load from edge list and test list") {
  const auto edges = write_temp("zsmap_hier_edges.txt",
                                "root l\nroot r\nl ll\nl lr\nr rl\nr rr\n");
  const auto list = write_temp("zsmap_hier_tests.txt", "ll\nlr\nrl\nrr\n");
  const auto h = metrics::LabelHierarchy::load(edges, list);
  CHECK(h.test_categories().size() == 4);
  CHECK(h.test_categories().at("rl") == 2);  // line order gives indices
  CHECK(h.feasible_set("ll", 2) == std::vector<int>{0, 1});
  CHECK_THROWS_AS(metrics::LabelHierarchy::load("/nonexistent/e", list),
                  std::invalid_argument);
  const auto bad = write_temp("zsmap_hier_bad.txt", "onlyparent\n");
  CHECK_THROWS_AS(metrics::LabelHierarchy::load(bad, list),
                  std::invalid_argument);
  const auto cyc = write_temp("zsmap_hier_cyc.txt", "a b\nb a\n");
  CHECK_THROWS_AS(metrics::LabelHierarchy::load(cyc, list),
                  std::invalid_argument);
}

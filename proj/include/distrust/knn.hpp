#pragma once

#include <optional>
#include <vector>

#include "distrust/dataset.hpp"
#include "distrust/metrics.hpp"

namespace distrust {

// k nearest rows, distances nondecreasing, ties broken by lower row id.
struct Neighborhood {
    std::vector<Eigen::Index> indices;
    std::vector<double> distances;
};

enum class IndexStrategy : std::uint8_t { Auto = 0, Tree = 1, Linear = 2 };

// Exact k-NN over a fixed point set. Triangle-inequality metrics run on a
// kd-tree with box-distance pruning; canberra/braycurtis fall back to an
// exhaustive scan. Both paths select neighbors with the same comparison key,
// so their results are identical.
class KnnIndex {
public:
    KnnIndex() = default;

    static KnnIndex build(const RowMatrix& points, MetricId metric,
                          IndexStrategy strategy = IndexStrategy::Auto);

    // `exclude` omits one row id, used for a training row's own vicinity.
    Neighborhood knn(const Eigen::Ref<const QueryPoint>& q, Eigen::Index k,
                     std::optional<Eigen::Index> exclude = std::nullopt) const;

    // Distance of the k-th nearest row: the k-vicinity radius.
    double kvicinity_radius(const Eigen::Ref<const QueryPoint>& q, Eigen::Index k,
                            std::optional<Eigen::Index> exclude = std::nullopt) const;

    MetricId metric() const { return metric_; }
    IndexStrategy strategy() const { return strategy_; }  // resolved: Tree or Linear
    Eigen::Index size() const { return points_.rows(); }
    Eigen::Index dim() const { return points_.cols(); }
    const RowMatrix& points() const { return points_; }

private:
    struct Node {
        Eigen::Index left = -1;  // -1 marks a leaf
        Eigen::Index right = -1;
        Eigen::Index begin = 0;  // leaf range into perm_
        Eigen::Index end = 0;
        int split_dim = 0;
        double split = 0.0;
    };

    struct Search;

    Eigen::Index build_node(Eigen::Index begin, Eigen::Index end);
    void search_tree(const Search& s, Eigen::Index node, double bound) const;
    void scan_range(const Search& s, Eigen::Index begin, Eigen::Index end) const;

    RowMatrix points_;
    MetricId metric_ = MetricId::Euclidean;
    IndexStrategy strategy_ = IndexStrategy::Linear;
    std::vector<Node> nodes_;
    std::vector<Eigen::Index> perm_;
};

}  // namespace distrust

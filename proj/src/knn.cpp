#include "distrust/knn.hpp"

#include <algorithm>
#include <cmath>

namespace distrust {

namespace {

constexpr Eigen::Index kLeafSize = 16;

// Selection key: squared distance for euclidean (sqrt deferred to reporting),
// the metric value otherwise. Accumulation is monotone nondecreasing in every
// case, which makes partial-sum early exit safe.
inline double key_distance(MetricId m, const double* a, const double* b, Eigen::Index d,
                           double abandon_above) {
    double s = 0.0;
    switch (m) {
        case MetricId::Euclidean:
            for (Eigen::Index i = 0; i < d; ++i) {
                const double t = a[i] - b[i];
                s += t * t;
                if (s > abandon_above) return s;
            }
            return s;
        case MetricId::Cityblock:
        case MetricId::Manhattan:
            for (Eigen::Index i = 0; i < d; ++i) {
                s += std::abs(a[i] - b[i]);
                if (s > abandon_above) return s;
            }
            return s;
        case MetricId::Chebyshev:
            for (Eigen::Index i = 0; i < d; ++i) {
                s = std::max(s, std::abs(a[i] - b[i]));
                if (s > abandon_above) return s;
            }
            return s;
        case MetricId::Canberra:
            for (Eigen::Index i = 0; i < d; ++i) {
                const double den = std::abs(a[i]) + std::abs(b[i]);
                if (den > 0.0) s += std::abs(a[i] - b[i]) / den;
                if (s > abandon_above) return s;
            }
            return s;
        case MetricId::Braycurtis:
            return kernel::braycurtis(a, b, d);
    }
    return s;
}

inline double report_distance(MetricId m, double key) {
    return m == MetricId::Euclidean ? std::sqrt(key) : key;
}

struct Candidate {
    double key;
    Eigen::Index id;
    bool operator<(const Candidate& o) const {
        return key < o.key || (key == o.key && id < o.id);
    }
};

}  // namespace

struct KnnIndex::Search {
    const double* q = nullptr;
    Eigen::Index k = 0;
    Eigen::Index exclude = -1;
    // Bounded max-heap of the k best candidates under Candidate ordering.
    mutable std::vector<Candidate> heap;
    mutable std::vector<double> off;  // per-dimension offset of q from the current box

    bool full() const { return static_cast<Eigen::Index>(heap.size()) == k; }
    double worst_key() const {
        return full() ? heap.front().key : std::numeric_limits<double>::infinity();
    }
    void offer(Candidate c) const {
        if (!full()) {
            heap.push_back(c);
            std::push_heap(heap.begin(), heap.end());
        } else if (c < heap.front()) {
            std::pop_heap(heap.begin(), heap.end());
            heap.back() = c;
            std::push_heap(heap.begin(), heap.end());
        }
    }
};

KnnIndex KnnIndex::build(const RowMatrix& points, MetricId metric, IndexStrategy strategy) {
    if (points.rows() < 1) throw InputError("knn index: empty dataset");
    KnnIndex index;
    index.points_ = points;
    index.metric_ = metric;
    if (strategy == IndexStrategy::Auto)
        strategy = is_tree_compatible(metric) ? IndexStrategy::Tree : IndexStrategy::Linear;
    if (strategy == IndexStrategy::Tree && !is_tree_compatible(metric))
        throw ConfigError(std::string("metric '") + to_string(metric) +
                          "' does not support tree indexing");
    index.strategy_ = strategy;
    if (strategy == IndexStrategy::Tree) {
        index.perm_.resize(points.rows());
        for (Eigen::Index i = 0; i < points.rows(); ++i) index.perm_[i] = i;
        index.nodes_.reserve(static_cast<std::size_t>(2 * points.rows() / kLeafSize + 2));
        index.build_node(0, points.rows());
    }
    return index;
}

Eigen::Index KnnIndex::build_node(Eigen::Index begin, Eigen::Index end) {
    const Eigen::Index me = static_cast<Eigen::Index>(nodes_.size());
    nodes_.push_back(Node{});
    Node node;
    node.begin = begin;
    node.end = end;

    if (end - begin > kLeafSize) {
        // Split the widest dimension of the actual point extent at its median.
        int dim = 0;
        double best_span = -1.0;
        for (int c = 0; c < points_.cols(); ++c) {
            double lo = points_(perm_[begin], c), hi = lo;
            for (Eigen::Index i = begin + 1; i < end; ++i) {
                const double v = points_(perm_[i], c);
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            if (hi - lo > best_span) {
                best_span = hi - lo;
                dim = c;
            }
        }
        if (best_span > 0.0) {
            const Eigen::Index mid = begin + (end - begin) / 2;
            std::nth_element(perm_.begin() + begin, perm_.begin() + mid, perm_.begin() + end,
                             [&](Eigen::Index a, Eigen::Index b) {
                                 const double va = points_(a, dim), vb = points_(b, dim);
                                 return va < vb || (va == vb && a < b);
                             });
            node.split_dim = dim;
            node.split = points_(perm_[mid], dim);
            node.left = build_node(begin, mid);
            node.right = build_node(mid, end);
        }
    }
    nodes_[me] = node;
    return me;
}

void KnnIndex::scan_range(const Search& s, Eigen::Index begin, Eigen::Index end) const {
    const Eigen::Index d = points_.cols();
    for (Eigen::Index i = begin; i < end; ++i) {
        const Eigen::Index id = perm_.empty() ? i : perm_[i];
        if (id == s.exclude) continue;
        const double worst = s.worst_key();
        const double key = key_distance(metric_, s.q, points_.row(id).data(), d, worst);
        if (key > worst) continue;
        s.offer(Candidate{key, id});
    }
}

void KnnIndex::search_tree(const Search& s, Eigen::Index node_idx, double bound) const {
    const Node& node = nodes_[node_idx];
    if (node.left < 0) {
        scan_range(s, node.begin, node.end);
        return;
    }
    const int dim = node.split_dim;
    const double diff = s.q[dim] - node.split;
    const Eigen::Index near = diff <= 0.0 ? node.left : node.right;
    const Eigen::Index far = diff <= 0.0 ? node.right : node.left;

    search_tree(s, near, bound);

    // Crossing the split plane replaces this dimension's offset with |diff|.
    const double old_off = s.off[dim];
    const double new_off = std::abs(diff);
    double far_bound;
    if (metric_ == MetricId::Euclidean)
        far_bound = bound - old_off * old_off + new_off * new_off;
    else if (metric_ == MetricId::Chebyshev) {
        s.off[dim] = new_off;
        far_bound = 0.0;
        for (Eigen::Index c = 0; c < points_.cols(); ++c)
            far_bound = std::max(far_bound, s.off[c]);
        s.off[dim] = old_off;
    } else {
        far_bound = bound - old_off + new_off;
    }
    if (s.full() && far_bound > s.worst_key()) return;
    s.off[dim] = new_off;
    search_tree(s, far, far_bound);
    s.off[dim] = old_off;
}

Neighborhood KnnIndex::knn(const Eigen::Ref<const QueryPoint>& q, Eigen::Index k,
                           std::optional<Eigen::Index> exclude) const {
    const Eigen::Index n = points_.rows();
    if (q.size() != points_.cols())
        throw InputError("knn: query dimension " + std::to_string(q.size()) +
                         " does not match index dimension " + std::to_string(points_.cols()));
    const Eigen::Index available = n - (exclude.has_value() ? 1 : 0);
    if (k < 1 || k > available)
        throw ConfigError("knn: k=" + std::to_string(k) + " out of range [1, " +
                          std::to_string(available) + "]");

    Eigen::RowVectorXd qc;
    const double* qdata = q.data();
    if (q.innerStride() != 1) {
        qc = q;
        qdata = qc.data();
    }

    Search s;
    s.q = qdata;
    s.k = k;
    s.exclude = exclude.value_or(-1);
    s.heap.reserve(static_cast<std::size_t>(k));

    if (strategy_ == IndexStrategy::Tree && !nodes_.empty()) {
        s.off.assign(static_cast<std::size_t>(points_.cols()), 0.0);
        search_tree(s, 0, 0.0);
    } else {
        for (Eigen::Index id = 0; id < n; ++id) {
            if (id == s.exclude) continue;
            const double worst = s.worst_key();
            const double key = key_distance(metric_, s.q, points_.row(id).data(), points_.cols(),
                                            worst);
            if (key > worst) continue;
            s.offer(Candidate{key, id});
        }
    }

    std::sort(s.heap.begin(), s.heap.end());
    Neighborhood out;
    out.indices.reserve(s.heap.size());
    out.distances.reserve(s.heap.size());
    for (const Candidate& c : s.heap) {
        out.indices.push_back(c.id);
        out.distances.push_back(report_distance(metric_, c.key));
    }
    return out;
}

double KnnIndex::kvicinity_radius(const Eigen::Ref<const QueryPoint>& q, Eigen::Index k,
                                  std::optional<Eigen::Index> exclude) const {
    return knn(q, k, exclude).distances.back();
}

}  // namespace distrust

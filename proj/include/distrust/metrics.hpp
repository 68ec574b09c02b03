#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "distrust/errors.hpp"

namespace distrust {

// Distance functions selectable at runtime. Cityblock and manhattan are
// distinct ids that evaluate to the same function.
enum class MetricId : std::uint8_t {
    Euclidean = 0,
    Cityblock = 1,
    Manhattan = 2,
    Chebyshev = 3,
    Canberra = 4,
    Braycurtis = 5,
};

inline const char* to_string(MetricId m) {
    switch (m) {
        case MetricId::Euclidean: return "euclidean";
        case MetricId::Cityblock: return "cityblock";
        case MetricId::Manhattan: return "manhattan";
        case MetricId::Chebyshev: return "chebyshev";
        case MetricId::Canberra: return "canberra";
        case MetricId::Braycurtis: return "braycurtis";
    }
    return "euclidean";
}

inline MetricId parse_metric(const std::string& name) {
    if (name == "euclidean") return MetricId::Euclidean;
    if (name == "cityblock") return MetricId::Cityblock;
    if (name == "manhattan") return MetricId::Manhattan;
    if (name == "chebyshev") return MetricId::Chebyshev;
    if (name == "canberra") return MetricId::Canberra;
    if (name == "braycurtis") return MetricId::Braycurtis;
    throw ConfigError("unknown metric '" + name + "'");
}

// Metrics satisfying the triangle inequality admit space-partitioning trees;
// canberra and braycurtis do not (braycurtis is not even a metric).
inline bool is_tree_compatible(MetricId m) {
    switch (m) {
        case MetricId::Euclidean:
        case MetricId::Cityblock:
        case MetricId::Manhattan:
        case MetricId::Chebyshev:
            return true;
        case MetricId::Canberra:
        case MetricId::Braycurtis:
            return false;
    }
    return false;
}

namespace kernel {

// Pointer kernels shared by the generic entry point and the index hot loops.
// Accumulation order is fixed (ascending i) so results are bit-reproducible
// across call sites.

inline double euclidean(const double* a, const double* b, Eigen::Index d) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) {
        const double t = a[i] - b[i];
        s += t * t;
    }
    return std::sqrt(s);
}

inline double cityblock(const double* a, const double* b, Eigen::Index d) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) s += std::abs(a[i] - b[i]);
    return s;
}

inline double chebyshev(const double* a, const double* b, Eigen::Index d) {
    double m = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double canberra(const double* a, const double* b, Eigen::Index d) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) {
        const double den = std::abs(a[i]) + std::abs(b[i]);
        if (den > 0.0) s += std::abs(a[i] - b[i]) / den;
    }
    return s;
}

inline double braycurtis(const double* a, const double* b, Eigen::Index d) {
    double num = 0.0;
    double den = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) {
        num += std::abs(a[i] - b[i]);
        den += std::abs(a[i] + b[i]);
    }
    return den > 0.0 ? num / den : 0.0;
}

inline double evaluate(MetricId m, const double* a, const double* b, Eigen::Index d) {
    switch (m) {
        case MetricId::Euclidean: return euclidean(a, b, d);
        case MetricId::Cityblock:
        case MetricId::Manhattan: return cityblock(a, b, d);
        case MetricId::Chebyshev: return chebyshev(a, b, d);
        case MetricId::Canberra: return canberra(a, b, d);
        case MetricId::Braycurtis: return braycurtis(a, b, d);
    }
    return euclidean(a, b, d);
}

}  // namespace kernel

inline double distance(const Eigen::Ref<const Eigen::RowVectorXd>& a,
                       const Eigen::Ref<const Eigen::RowVectorXd>& b, MetricId metric) {
    if (a.size() != b.size())
        throw std::invalid_argument("distance: dimension mismatch (" + std::to_string(a.size()) +
                                    " vs " + std::to_string(b.size()) + ")");
    if (a.innerStride() == 1 && b.innerStride() == 1)
        return kernel::evaluate(metric, a.data(), b.data(), a.size());
    const Eigen::RowVectorXd ac = a;
    const Eigen::RowVectorXd bc = b;
    return kernel::evaluate(metric, ac.data(), bc.data(), ac.size());
}

}  // namespace distrust

#pragma once

#include <Eigen/Dense>
#include <numeric>
#include <vector>

#include "riskbsde/common.hpp"

namespace riskbsde::eq {

// v dominates w: v_j <= w_j everywhere with strict inequality somewhere.
inline bool pareto_dominates(const Eigen::VectorXd& v, const Eigen::VectorXd& w) {
    if (v.size() != w.size())
        throw ValidationError("pareto_dominates: vectors must have equal length");
    bool strict = false;
    for (int j = 0; j < v.size(); ++j) {
        if (v[j] > w[j]) return false;
        if (v[j] < w[j]) strict = true;
    }
    return strict;
}

// Indices of the nondominated points, input order preserved; duplicates
// are all kept (a point never dominates its equal). Archive scan rather
// than the literal pairwise definition, so tests can oracle it.
inline std::vector<int> pareto_filter_indices(const std::vector<Eigen::VectorXd>& points) {
    if (points.empty()) throw ValidationError("pareto_filter: empty input");
    std::vector<int> archive;
    for (int i = 0; i < static_cast<int>(points.size()); ++i) {
        bool dominated = false;
        for (std::size_t a = 0; a < archive.size();) {
            if (pareto_dominates(points[archive[a]], points[i])) {
                dominated = true;
                break;
            }
            if (pareto_dominates(points[i], points[archive[a]])) {
                archive.erase(archive.begin() + a);
            } else {
                ++a;
            }
        }
        if (!dominated) archive.push_back(i);
    }
    std::sort(archive.begin(), archive.end());
    return archive;
}

inline std::vector<Eigen::VectorXd> pareto_filter(const std::vector<Eigen::VectorXd>& points) {
    std::vector<Eigen::VectorXd> out;
    for (int i : pareto_filter_indices(points)) out.push_back(points[i]);
    return out;
}

}  // namespace riskbsde::eq

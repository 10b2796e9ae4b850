#include "stabclust/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace stabclust {

const char* objective_name(Objective o) {
  return o == Objective::KMedian ? "kmedian" : "minsum";
}

MetricInstance::MetricInstance(int n, std::vector<double> dist)
    : n_(n), dist_(std::move(dist)) {
  if (n <= 0) throw std::invalid_argument("instance must contain at least one point");
  if (dist_.size() != static_cast<size_t>(n) * n)
    throw std::invalid_argument("distance matrix is not n x n");
}

MetricInstance MetricInstance::from_rows(
    const std::vector<std::vector<double>>& rows) {
  int n = static_cast<int>(rows.size());
  if (n == 0) throw std::invalid_argument("instance must contain at least one point");
  std::vector<double> flat;
  flat.reserve(static_cast<size_t>(n) * n);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("distance matrix has a ragged row");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return MetricInstance(n, std::move(flat));
}

double MetricInstance::max_distance() const {
  double m = 0.0;
  for (double v : dist_) m = std::max(m, v);
  return m;
}

namespace {

std::string pair_str(int i, int j) {
  std::ostringstream os;
  os << "(" << i << "," << j << ")";
  return os.str();
}

}  // namespace

ValidationVerdict validate_metric(MetricInstance& inst, bool require_triangle,
                                  bool require_unit,
                                  bool require_strict_positive) {
  ValidationVerdict v;
  const int n = inst.n();

  for (int i = 0; i < n && v.zero_diagonal; ++i) {
    if (inst.d(i, i) != 0.0) {
      v.zero_diagonal = false;
      v.violations.push_back("nonzero diagonal at index " + std::to_string(i));
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double a = inst.d(i, j), b = inst.d(j, i);
      if (v.symmetric && a != b) {
        v.symmetric = false;
        std::ostringstream os;
        os << "asymmetry at " << pair_str(i, j) << ": " << a << " vs " << b;
        v.violations.push_back(os.str());
      }
      if (v.nonnegative && (a < 0.0 || b < 0.0)) {
        v.nonnegative = false;
        v.violations.push_back("negative distance at " + pair_str(i, j));
      }
      if (v.strictly_positive && (a == 0.0 || b == 0.0)) {
        v.strictly_positive = false;
        v.violations.push_back("zero distance between distinct points " +
                               pair_str(i, j));
      }
    }
  }

  v.within_unit = inst.max_distance() <= 1.0;
  if (!v.within_unit && require_unit)
    v.violations.push_back("distance above 1 present but unit range required");

  if (require_triangle) {
    for (int i = 0; i < n && v.triangle_ok; ++i) {
      for (int j = 0; j < n && v.triangle_ok; ++j) {
        if (j == i) continue;
        const double direct = inst.d(i, j);
        for (int l = 0; l < n; ++l) {
          if (l == i || l == j) continue;
          const double via = inst.d(i, l) + inst.d(l, j);
          if (direct > via + kCostTolerance) {
            v.triangle_ok = false;
            v.triangle_witness = TriangleViolation{i, l, j, direct, via};
            std::ostringstream os;
            os << "triangle violation (" << i << "," << l << "," << j
               << "): d=" << direct << " > " << via;
            v.violations.push_back(os.str());
            break;
          }
        }
      }
    }
  }

  v.valid = v.symmetric && v.zero_diagonal && v.nonnegative &&
            (!require_strict_positive || v.strictly_positive) &&
            (!require_triangle || v.triangle_ok) &&
            (!require_unit || v.within_unit);
  if (v.valid) {
    if (require_triangle) inst.metric_checked = true;
    inst.unit_range = v.within_unit;
  }
  return v;
}

void validate_clustering(const MetricInstance& inst, const Clustering& c,
                         bool need_centers) {
  const int n = inst.n();
  if (c.k < 1 || c.k > n)
    throw std::invalid_argument("cluster count k must satisfy 1 <= k <= n");
  if (static_cast<int>(c.assignment.size()) != n)
    throw std::invalid_argument("assignment length differs from point count");
  std::vector<char> used(c.k, 0);
  for (int p = 0; p < n; ++p) {
    int a = c.assignment[p];
    if (a < 0 || a >= c.k)
      throw std::invalid_argument("assignment label out of range at point " +
                                  std::to_string(p));
    used[a] = 1;
  }
  for (int i = 0; i < c.k; ++i)
    if (!used[i])
      throw std::invalid_argument("cluster " + std::to_string(i) + " is empty");
  if (need_centers && !c.centers)
    throw std::invalid_argument("clustering has no centers");
  if (c.centers) {
    if (static_cast<int>(c.centers->size()) != c.k)
      throw std::invalid_argument("center list length differs from k");
    std::vector<char> seen(n, 0);
    for (int i = 0; i < c.k; ++i) {
      int ctr = (*c.centers)[i];
      if (ctr < 0 || ctr >= n)
        throw std::invalid_argument("center index out of range");
      if (seen[ctr]) throw std::invalid_argument("duplicate center");
      seen[ctr] = 1;
      if (c.assignment[ctr] != i)
        throw std::invalid_argument("center of cluster " + std::to_string(i) +
                                    " is not assigned to it");
    }
  }
}

Cost kmedian_cost(const MetricInstance& inst, const Clustering& c) {
  validate_clustering(inst, c, true);
  const auto& centers = *c.centers;
  double total = 0.0;
  for (int p = 0; p < inst.n(); ++p) total += inst.d(p, centers[c.assignment[p]]);
  return Cost{total, Objective::KMedian};
}

Cost minsum_cost(const MetricInstance& inst, const Clustering& c) {
  validate_clustering(inst, c, false);
  double total = 0.0;
  auto members = cluster_members(c);
  for (const auto& cl : members) {
    for (size_t a = 0; a < cl.size(); ++a)
      for (size_t b = a + 1; b < cl.size(); ++b)
        total += 2.0 * inst.d(cl[a], cl[b]);
  }
  return Cost{total, Objective::MinSum};
}

double point_to_set_distance(const MetricInstance& inst, int p,
                             std::span<const int> a) {
  if (p < 0 || p >= inst.n()) throw std::out_of_range("point index out of range");
  double total = 0.0;
  for (int q : a) {
    if (q < 0 || q >= inst.n()) throw std::out_of_range("set index out of range");
    total += inst.d(p, q);
  }
  return total;
}

double set_to_set_distance(const MetricInstance& inst, std::span<const int> a,
                           std::span<const int> b) {
  for (int q : b)
    if (q < 0 || q >= inst.n()) throw std::out_of_range("set index out of range");
  double total = 0.0;
  for (int p : a) total += point_to_set_distance(inst, p, b);
  return total;
}

std::vector<std::vector<int>> cluster_members(const Clustering& c) {
  std::vector<std::vector<int>> members(c.k);
  for (int p = 0; p < static_cast<int>(c.assignment.size()); ++p)
    members[c.assignment[p]].push_back(p);
  return members;
}

std::vector<int> canonical_labels(const std::vector<int>& assignment) {
  std::vector<int> relabel;
  std::vector<int> out(assignment.size());
  std::vector<int> map;
  for (size_t p = 0; p < assignment.size(); ++p) {
    int a = assignment[p];
    if (a >= static_cast<int>(map.size())) map.resize(a + 1, -1);
    if (map[a] < 0) {
      map[a] = static_cast<int>(relabel.size());
      relabel.push_back(a);
    }
    out[p] = map[a];
  }
  return out;
}

bool same_partition(const Clustering& a, const Clustering& b) {
  if (a.assignment.size() != b.assignment.size()) return false;
  return canonical_labels(a.assignment) == canonical_labels(b.assignment);
}

int medoid(const MetricInstance& inst, std::span<const int> members) {
  if (members.empty()) throw std::invalid_argument("medoid of empty set");
  int best = -1;
  double best_sum = std::numeric_limits<double>::infinity();
  for (int p : members) {
    double s = point_to_set_distance(inst, p, members);
    if (s < best_sum) {
      best_sum = s;
      best = p;
    }
  }
  return best;
}

std::vector<int> medoid_centers(const MetricInstance& inst,
                                const Clustering& c) {
  std::vector<int> centers(c.k);
  auto members = cluster_members(c);
  for (int i = 0; i < c.k; ++i) centers[i] = medoid(inst, members[i]);
  return centers;
}

Clustering assign_to_nearest(const MetricInstance& inst,
                             const std::vector<int>& centers) {
  const int n = inst.n();
  const int k = static_cast<int>(centers.size());
  Clustering c;
  c.k = k;
  c.assignment.assign(n, -1);
  for (int i = 0; i < k; ++i) c.assignment[centers[i]] = i;
  for (int p = 0; p < n; ++p) {
    if (c.assignment[p] >= 0) continue;  // centers self-assign
    int best = 0;
    double best_d = inst.d(p, centers[0]);
    for (int i = 1; i < k; ++i) {
      double d = inst.d(p, centers[i]);
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
    c.assignment[p] = best;
  }
  c.centers = centers;
  return c;
}

}  // namespace stabclust

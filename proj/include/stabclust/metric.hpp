#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace stabclust {

enum class Objective { KMedian, MinSum };

const char* objective_name(Objective o);

struct Cost {
  double value = 0.0;
  Objective objective = Objective::KMedian;
};

// Absolute tolerance for cost comparisons on general instances. Reduction
// metrics only use half-integers, which compare exactly.
inline constexpr double kCostTolerance = 1e-12;

class BudgetExceeded : public std::runtime_error {
public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Finite point set with a dense symmetric distance matrix. The constructor
// only enforces shape; content constraints are reported by validate_metric so
// that deliberately non-metric matrices (perturbed instances) stay
// representable. Instances are treated as immutable once validated.
class MetricInstance {
public:
  MetricInstance() = default;
  MetricInstance(int n, std::vector<double> dist);
  static MetricInstance from_rows(const std::vector<std::vector<double>>& rows);

  int n() const { return n_; }
  double d(int i, int j) const { return dist_[static_cast<size_t>(i) * n_ + j]; }
  void set(int i, int j, double v) {
    dist_[static_cast<size_t>(i) * n_ + j] = v;
    dist_[static_cast<size_t>(j) * n_ + i] = v;
  }
  const std::vector<double>& data() const { return dist_; }
  double max_distance() const;
  bool within_unit_range() const { return max_distance() <= 1.0; }

  bool metric_checked = false;  // triangle inequality was validated and holds
  bool unit_range = false;      // all distances <= 1

private:
  int n_ = 0;
  std::vector<double> dist_;
};

struct TriangleViolation {
  int i = -1, l = -1, j = -1;  // d(i,j) > d(i,l) + d(l,j)
  double direct = 0.0, via = 0.0;
};

struct ValidationVerdict {
  bool symmetric = true;
  bool zero_diagonal = true;
  bool nonnegative = true;
  bool strictly_positive = true;  // off-diagonal entries > 0
  bool triangle_ok = true;        // meaningful only when triangle was checked
  bool within_unit = true;
  std::optional<TriangleViolation> triangle_witness;
  std::vector<std::string> violations;  // one human-readable entry per failed constraint
  bool valid = false;                   // all requested checks passed
};

// Reports every violated constraint instead of throwing. On success sets
// inst.metric_checked (when the triangle inequality was requested) and
// inst.unit_range.
ValidationVerdict validate_metric(MetricInstance& inst, bool require_triangle,
                                  bool require_unit,
                                  bool require_strict_positive = true);

// Partition of the points into k clusters, optionally with one designated
// center per cluster; centers[i] must itself be assigned to cluster i.
struct Clustering {
  std::vector<int> assignment;  // point -> cluster index in [0, k)
  int k = 0;
  std::optional<std::vector<int>> centers;  // cluster index -> point
};

// Throws std::invalid_argument describing the first violated constraint.
void validate_clustering(const MetricInstance& inst, const Clustering& c,
                         bool need_centers);

Cost kmedian_cost(const MetricInstance& inst, const Clustering& c);

// Ordered-pair convention: every unordered pair inside a cluster is counted
// twice. A 3-point cluster with pairwise distance 1/2 therefore costs 3.
Cost minsum_cost(const MetricInstance& inst, const Clustering& c);

// Sum of d(p, q) over q in a; a term with q == p contributes 0.
double point_to_set_distance(const MetricInstance& inst, int p,
                             std::span<const int> a);

// Sum over all (p, q) in a x b; a and b may overlap.
double set_to_set_distance(const MetricInstance& inst, std::span<const int> a,
                           std::span<const int> b);

std::vector<std::vector<int>> cluster_members(const Clustering& c);

// Relabels clusters by order of first appearance, giving a canonical form for
// partition comparison.
std::vector<int> canonical_labels(const std::vector<int>& assignment);

bool same_partition(const Clustering& a, const Clustering& b);

// Member minimizing the summed distance to its co-members; lowest index wins
// ties.
int medoid(const MetricInstance& inst, std::span<const int> members);

std::vector<int> medoid_centers(const MetricInstance& inst, const Clustering& c);

// Nearest-center assignment; ties go to the earliest center in the list and
// centers always self-assign.
Clustering assign_to_nearest(const MetricInstance& inst,
                             const std::vector<int>& centers);

}  // namespace stabclust

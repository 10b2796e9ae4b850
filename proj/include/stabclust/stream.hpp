#pragma once

#include <functional>
#include <vector>

#include "stabclust/metric.hpp"

namespace stabclust {

using DistanceOracle = std::function<double(int, int)>;

// Bounded-memory candidate-center state: at most k retained points plus their
// cached pairwise distances. Evicted points are never queried again.
class StreamState {
public:
  explicit StreamState(int k);

  struct Candidate {
    int point = -1;
    long long arrival = -1;
  };

  int k() const { return k_; }
  long long points_seen() const { return seen_; }
  const std::vector<Candidate>& candidates() const { return cands_; }
  std::vector<int> candidate_points() const;
  int peak_candidates() const { return peak_; }

  // Cached distance between two current candidate slots.
  double cached_distance(int a, int b) const;

  // Inserts the next stream point. The first k arrivals fill the candidate
  // set; afterwards the endpoint with the larger arrival index of the
  // closest retained pair is evicted (distance ties resolved by the
  // lexicographically smallest arrival-index pair). Exactly
  // |candidates| oracle calls are made, all against the new point.
  void step(int new_point, const DistanceOracle& oracle);

  // Info for instrumented replays: the two arrivals of the pair that realized
  // the argmin in the last evicting step, and which point left.
  struct LastEviction {
    int evicted_point = -1;
    int partner_point = -1;
  };
  const LastEviction& last_eviction() const { return last_eviction_; }

private:
  double& cached(int a, int b);

  int k_ = 0;
  long long seen_ = 0;
  int peak_ = 0;
  std::vector<Candidate> cands_;     // in arrival order
  std::vector<double> pair_;         // cached distances among candidate slots
  LastEviction last_eviction_;
};

// Value-semantics step wrapper.
StreamState stream_step(StreamState state, int new_point,
                        const DistanceOracle& oracle);

struct StreamRunResult {
  std::vector<int> centers;  // final candidates, in arrival order
  int peak_candidates = 0;
  long long oracle_calls = 0;
};

// Replays the points of `inst` in the given order through the stream and
// returns the final candidate set. Order must be a permutation of [0, n).
StreamRunResult stream_kmedian(const MetricInstance& inst,
                               const std::vector<int>& order, int k);

// Nearest-center partition; ties go to the earliest listed center, centers
// self-assign. Centers must be distinct.
Clustering induce_partition(const MetricInstance& inst,
                            const std::vector<int>& centers);

}  // namespace stabclust

#include "stabclust/stream.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace stabclust {

StreamState::StreamState(int k) : k_(k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  const size_t cap = static_cast<size_t>(k) + 1;
  pair_.assign(cap * cap, 0.0);
  cands_.reserve(cap);
}

double& StreamState::cached(int a, int b) {
  return pair_[static_cast<size_t>(a) * (k_ + 1) + b];
}

double StreamState::cached_distance(int a, int b) const {
  if (a < 0 || b < 0 || a >= static_cast<int>(cands_.size()) ||
      b >= static_cast<int>(cands_.size()))
    throw std::out_of_range("candidate slot out of range");
  return pair_[static_cast<size_t>(a) * (k_ + 1) + b];
}

std::vector<int> StreamState::candidate_points() const {
  std::vector<int> pts;
  pts.reserve(cands_.size());
  for (const auto& c : cands_) pts.push_back(c.point);
  return pts;
}

void StreamState::step(int new_point, const DistanceOracle& oracle) {
  for (const auto& c : cands_)
    if (c.point == new_point)
      throw std::invalid_argument("stream point already retained");

  const int slot = static_cast<int>(cands_.size());
  for (int i = 0; i < slot; ++i) {
    const double d = oracle(cands_[i].point, new_point);
    cached(i, slot) = d;
    cached(slot, i) = d;
  }
  cached(slot, slot) = 0.0;
  cands_.push_back(Candidate{new_point, seen_});
  ++seen_;

  if (static_cast<int>(cands_.size()) <= k_) {
    peak_ = std::max(peak_, static_cast<int>(cands_.size()));
    return;
  }

  // Candidates are stored in arrival order, so slot order is arrival order
  // and scanning i<j ascending realizes the arrival-pair tie-break.
  int best_i = 0, best_j = 1;
  double best = cached(0, 1);
  const int count = static_cast<int>(cands_.size());
  for (int i = 0; i < count; ++i) {
    for (int j = i + 1; j < count; ++j) {
      if (cached(i, j) < best) {
        best = cached(i, j);
        best_i = i;
        best_j = j;
      }
    }
  }

  last_eviction_ =
      LastEviction{cands_[best_j].point, cands_[best_i].point};
  cands_.erase(cands_.begin() + best_j);
  for (int i = best_j; i < count - 1; ++i) {
    for (int j = 0; j < count; ++j) {
      cached(i, j) = cached(i + 1, j);
    }
  }
  for (int j = best_j; j < count - 1; ++j)
    for (int i = 0; i < count - 1; ++i) cached(i, j) = cached(i, j + 1);
  peak_ = std::max(peak_, static_cast<int>(cands_.size()));
}

StreamState stream_step(StreamState state, int new_point,
                        const DistanceOracle& oracle) {
  state.step(new_point, oracle);
  return state;
}

StreamRunResult stream_kmedian(const MetricInstance& inst,
                               const std::vector<int>& order, int k) {
  const int n = inst.n();
  if (k < 1 || k > n) throw std::invalid_argument("k must satisfy 1 <= k <= n");
  if (static_cast<int>(order.size()) != n)
    throw std::invalid_argument("order length differs from point count");
  std::vector<char> seen(n, 0);
  for (int p : order) {
    if (p < 0 || p >= n) throw std::invalid_argument("order index out of range");
    if (seen[p]) throw std::invalid_argument("order is not a permutation");
    seen[p] = 1;
  }

  StreamRunResult out;
  StreamState state(k);
  DistanceOracle oracle = [&](int a, int b) {
    ++out.oracle_calls;
    return inst.d(a, b);
  };
  for (int p : order) state.step(p, oracle);
  out.centers = state.candidate_points();
  out.peak_candidates = state.peak_candidates();
  return out;
}

Clustering induce_partition(const MetricInstance& inst,
                            const std::vector<int>& centers) {
  if (centers.empty()) throw std::invalid_argument("no centers given");
  std::set<int> uniq(centers.begin(), centers.end());
  if (uniq.size() != centers.size())
    throw std::invalid_argument("duplicate centers");
  for (int c : centers)
    if (c < 0 || c >= inst.n())
      throw std::out_of_range("center index out of range");
  return assign_to_nearest(inst, centers);
}

}  // namespace stabclust

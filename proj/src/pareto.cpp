#include "greeneval/pareto.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "greeneval/kernels/kernels.hpp"

namespace greeneval::pareto {

namespace {

std::size_t common_dimension(std::span<const EvalPoint> points) {
  if (points.empty()) return 0;
  const std::size_t k = points.front().dimension();
  std::unordered_set<std::string_view> labels;
  for (const auto& p : points) {
    if (p.dimension() != k) {
      throw Error(ErrorCode::kDimension, "point '" + p.label() + "' has " +
                                             std::to_string(p.dimension()) +
                                             " objectives, expected " + std::to_string(k));
    }
    if (!labels.insert(p.label()).second) {
      throw Error(ErrorCode::kDuplicate, "duplicate point label '" + p.label() + "'");
    }
  }
  return k;
}

std::vector<double> column_major(std::span<const EvalPoint> points, std::size_t k) {
  const std::size_t n = points.size();
  std::vector<double> data(n * k);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t d = 0; d < k; ++d) data[d * n + j] = points[j][d];
  }
  return data;
}

// Sort by (f1, f2) and sweep: a point is dominated iff some point with
// different, lexicographically smaller coordinates has f2 <= its f2.
std::vector<bool> sweep_dominated_2d(std::span<const EvalPoint> points) {
  const std::size_t n = points.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (points[a][0] != points[b][0]) return points[a][0] < points[b][0];
    if (points[a][1] != points[b][1]) return points[a][1] < points[b][1];
    return a < b;
  });

  std::vector<bool> dominated(n, false);
  double best_f2 = std::numeric_limits<double>::infinity();
  std::size_t g = 0;
  while (g < n) {
    // Group of identical coordinates.
    std::size_t end = g + 1;
    const auto& head = points[order[g]];
    while (end < n && points[order[end]][0] == head[0] && points[order[end]][1] == head[1]) ++end;
    const bool group_dominated = best_f2 <= head[1];
    for (std::size_t i = g; i < end; ++i) dominated[order[i]] = group_dominated;
    best_f2 = std::min(best_f2, head[1]);
    g = end;
  }
  return dominated;
}

std::vector<std::string> labels_of(std::span<const EvalPoint> points,
                                   std::span<const std::uint8_t> mask) {
  std::vector<std::string> out;
  for (std::size_t j = 0; j < mask.size(); ++j) {
    if (mask[j]) out.push_back(points[j].label());
  }
  return out;
}

}  // namespace

bool dominates(const EvalPoint& a, const EvalPoint& b) {
  if (a.dimension() != b.dimension()) {
    throw Error(ErrorCode::kDimension, "cannot compare '" + a.label() + "' (" +
                                           std::to_string(a.dimension()) + " objectives) with '" +
                                           b.label() + "' (" + std::to_string(b.dimension()) + ")");
  }
  bool strictly_better = false;
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strictly_better = true;
  }
  return strictly_better;
}

bool FrontResult::is_optimal(const std::string& label) const {
  return std::find(optimal.begin(), optimal.end(), label) != optimal.end();
}

FrontResult pareto_front(std::span<const EvalPoint> points) {
  const std::size_t k = common_dimension(points);
  FrontResult result;
  if (points.empty()) return result;

  const std::size_t n = points.size();
  const std::vector<double> data = column_major(points, k);
  const kernels::ObjectiveColumns cols{data, n, k};
  std::vector<std::uint8_t> mask(n);

  std::vector<bool> dominated(n, false);
  if (k == 2) {
    dominated = sweep_dominated_2d(points);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (k == 2 && !dominated[i]) {
      result.optimal.push_back(points[i].label());
      continue;
    }
    kernels::dominator_mask(cols, i, mask);
    auto dominators = labels_of(points, mask);
    if (k == 2 && dominators.empty()) {
      throw std::logic_error("2-D sweep flagged '" + points[i].label() + "' with no dominator");
    }
    if (dominators.empty()) {
      result.optimal.push_back(points[i].label());
    } else {
      result.dominated.push_back({points[i].label(), std::move(dominators)});
    }
  }
  return result;
}

std::vector<std::vector<bool>> dominance_matrix(std::span<const EvalPoint> points) {
  const std::size_t k = common_dimension(points);
  const std::size_t n = points.size();
  std::vector<std::vector<bool>> matrix(n, std::vector<bool>(n, false));
  if (n == 0) return matrix;
  const std::vector<double> data = column_major(points, k);
  const kernels::ObjectiveColumns cols{data, n, k};
  std::vector<std::uint8_t> mask(n);
  for (std::size_t target = 0; target < n; ++target) {
    kernels::dominator_mask(cols, target, mask);
    for (std::size_t i = 0; i < n; ++i) matrix[i][target] = mask[i] != 0;
  }
  return matrix;
}

}  // namespace greeneval::pareto

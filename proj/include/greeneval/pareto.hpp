#pragma once

// Pareto dominance over k-objective minimization points.
//
// a dominates b iff a_i <= b_i for every objective and a_i < b_i for at least
// one. Points with identical coordinates therefore never dominate each other
// and all stay on the front.

#include <span>
#include <string>
#include <vector>

#include "greeneval/core.hpp"

namespace greeneval::pareto {

// Throws kDimension when the objective counts differ.
bool dominates(const EvalPoint& a, const EvalPoint& b);

struct DominatedEntry {
  std::string label;
  std::vector<std::string> dominators;  // every dominating point, in input order

  friend bool operator==(const DominatedEntry&, const DominatedEntry&) = default;
};

struct FrontResult {
  std::vector<std::string> optimal;       // input order
  std::vector<DominatedEntry> dominated;  // input order

  bool is_optimal(const std::string& label) const;
  friend bool operator==(const FrontResult&, const FrontResult&) = default;
};

// Throws kDuplicate on repeated labels and kDimension on mixed objective
// counts. Two objectives use a sort-and-sweep pass; other counts a pairwise
// scan. Dominator lists are always exhaustive.
FrontResult pareto_front(std::span<const EvalPoint> points);

// matrix[i][j] == dominates(points[i], points[j]).
std::vector<std::vector<bool>> dominance_matrix(std::span<const EvalPoint> points);

}  // namespace greeneval::pareto

#pragma once

#include <optional>
#include <string_view>

#include "greeneval/core.hpp"

namespace greeneval::quality {

// MOS in [1,5] -> loss 1 - MOS/5 in [0,0.8]. Throws kDomain out of range.
QualityScore normalize_mos(double mos);

// Inverse: loss in [0,0.8] -> MOS = 5 (1 - loss). Throws kDomain out of range.
double denormalize(double loss);

// How a generic quality metric becomes a minimization objective.
enum class Direction {
  kMinimize,    // used as-is
  kMaximize,    // negated
  kComplement,  // 1 - x, for scores in [0,1] where higher is better
};

std::string_view direction_name(Direction d);
std::optional<Direction> parse_direction(std::string_view text);

double to_minimization(double value, Direction direction);

}  // namespace greeneval::quality

#include "greeneval/quality.hpp"

#include <cmath>

namespace greeneval::quality {

QualityScore normalize_mos(double mos) { return QualityScore::from_mos(mos); }

double denormalize(double loss) { return QualityScore::from_loss(loss).mos(); }

std::string_view direction_name(Direction d) {
  switch (d) {
    case Direction::kMinimize: return "min";
    case Direction::kMaximize: return "max";
    case Direction::kComplement: return "complement";
  }
  return "min";
}

std::optional<Direction> parse_direction(std::string_view text) {
  for (auto d : {Direction::kMinimize, Direction::kMaximize, Direction::kComplement}) {
    if (direction_name(d) == text) return d;
  }
  return std::nullopt;
}

double to_minimization(double value, Direction direction) {
  switch (direction) {
    case Direction::kMinimize: return value;
    case Direction::kMaximize: return -value;
    case Direction::kComplement: return 1.0 - value;
  }
  return value;
}

}  // namespace greeneval::quality

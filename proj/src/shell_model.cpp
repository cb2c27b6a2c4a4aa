#include "gamow/shell_model.hpp"

namespace gamow {

ShellModel make_model(double lambda, double radius_R) {
  if (!(lambda > 0.0))
    throw NonPositiveStrength("lambda = " + std::to_string(lambda));
  if (!(radius_R > 0.0))
    throw NonPositiveRadius("R = " + std::to_string(radius_R));
  return ShellModel{lambda, radius_R};
}

InitialState initial_state_box_mode(const ShellModel& model, int m) {
  if (m < 1) throw InvalidMode("mode m = " + std::to_string(m));
  return InitialState{m, model.radius_R};
}

}  // namespace gamow

#include "trlp/random.hpp"

#include <cmath>
#include <numbers>

namespace trlp {

double Rng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (spare_normal_) {
    const double z = *spare_normal_;
    spare_normal_.reset();
    return z;
  }
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_normal_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

std::size_t Rng::below(std::size_t k) {
  const auto i = static_cast<std::size_t>(uniform() * static_cast<double>(k));
  return i < k ? i : k - 1;
}

}  // namespace trlp

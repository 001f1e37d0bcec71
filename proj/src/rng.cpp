#include "minteval/rng.hpp"

#include <cmath>

namespace minteval {

double Rng::normal(double mean, double sd) {
  double u1 = uniform01();
  double u2 = uniform01();
  if (u1 < 0x1.0p-60) u1 = 0x1.0p-60;  // guard log(0)
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double z = r * std::cos(2.0 * 3.14159265358979323846 * u2);
  return mean + z * sd;
}

}  // namespace minteval

#include "varibase/errors/sync.hpp"

#include <sstream>
#include <stdexcept>

#include "varibase/core/errors.hpp"

namespace varibase::errors {

double max_velocity_for_sync(double k, double z, double b, double f,
                             double dt) {
  if (!(k > 0.0) || !(z > 0.0) || !(b > 0.0) || !(f > 0.0) || !(dt > 0.0)) {
    throw std::invalid_argument("max_velocity_for_sync: arguments must be > 0");
  }
  const double margin = b * f - k * z;
  if (!(margin > 0.0)) {
    std::ostringstream msg;
    msg << "max_velocity_for_sync: b*f = " << b * f << " <= k*Z = " << k * z
        << "; no velocity keeps the disparity error under " << k
        << " px at this depth/baseline";
    throw UnboundedRegimeError(msg.str());
  }
  return k * z * z / (dt * margin);
}

}  // namespace varibase::errors

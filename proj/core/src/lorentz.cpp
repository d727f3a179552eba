#include "minkflow/lorentz.hpp"

#include <sstream>

#include "minkflow/errors.hpp"

namespace minkflow {

CausalClass causal_class(const Vec3M& a, double tol) {
  if (tol < 0.0) throw Error(ErrorCode::InvalidArgument, "causal_class: tol must be >= 0");
  if (a == Vec3M{}) return CausalClass::Spacelike;
  const double q = minkowski_dot(a, a);
  if (q > tol) return CausalClass::Spacelike;
  if (q < -tol) return CausalClass::Timelike;
  return CausalClass::Null;
}

Vec3M normalize(const Vec3M& a, double tol) {
  const double n = minkowski_norm(a);
  if (!(n > tol)) {
    std::ostringstream msg;
    msg << "cannot normalize " << a << " (pseudo-norm " << n << " <= " << tol << ")";
    throw Error(ErrorCode::NullVector, msg.str());
  }
  return a / n;
}

}  // namespace minkflow

#include "qtgi/quaternion.hpp"

#include <ostream>

#include "qtgi/errors.hpp"

namespace qtgi {

Quaternion qinv(const Quaternion& q) {
  const double n2 = qnorm2(q);
  if (n2 == 0.0) {
    throw ZeroDivisor();
  }
  return qconj(q) * (1.0 / n2);
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  auto term = [&os](double v, const char* unit) {
    os << (v < 0 ? " - " : " + ") << std::abs(v) << unit;
  };
  os << q.w;
  term(q.x, "i");
  term(q.y, "j");
  term(q.z, "k");
  return os;
}

}  // namespace qtgi

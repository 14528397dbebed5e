#include "pnf/scalar.hpp"

#include <ostream>
#include <sstream>

namespace pnf {

namespace {

std::string rat_str(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << "/" << denominator(r);
  return os.str();
}

}  // namespace

std::string Scalar::str() const {
  if (mode_ == Mode::numeric) {
    std::ostringstream os;
    os.precision(17);
    os << v_;
    return os.str();
  }
  if (b_ == 0) return rat_str(a_);
  std::string sq = rat_str(b_) + "*sqrt2";
  if (a_ == 0) return sq;
  if (b_ > 0) return rat_str(a_) + "+" + sq;
  return rat_str(a_) + sq;  // rat_str(b_) carries the minus sign
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
  return os << s.str();
}

}  // namespace pnf

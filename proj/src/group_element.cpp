#include "flatgraph/group_element.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "flatgraph/errors.hpp"
#include "flatgraph/numeric.hpp"

namespace flatgraph {

GroupElement GroupElement::unit(std::size_t rank, std::size_t index) {
  GroupElement e = zero(rank);
  e.coords_.at(index) = 1;
  return e;
}

bool GroupElement::is_zero() const {
  for (auto c : coords_) {
    if (c != 0) return false;
  }
  return true;
}

std::int64_t GroupElement::inf_norm() const {
  std::int64_t m = 0;
  for (auto c : coords_) m = std::max(m, std::abs(c));
  return m;
}

std::int64_t GroupElement::l1_norm() const {
  std::int64_t s = 0;
  for (auto c : coords_) s = checked_add(s, std::abs(c));
  return s;
}

GroupElement& GroupElement::operator+=(const GroupElement& other) {
  if (other.rank() != rank()) throw DimensionMismatch(rank(), other.rank());
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] = checked_add(coords_[i], other.coords_[i]);
  return *this;
}

GroupElement& GroupElement::operator-=(const GroupElement& other) {
  if (other.rank() != rank()) throw DimensionMismatch(rank(), other.rank());
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] = checked_add(coords_[i], -other.coords_[i]);
  return *this;
}

GroupElement operator-(const GroupElement& a) {
  GroupElement r = a;
  for (auto& c : r.coords_) c = -c;
  return r;
}

GroupElement operator*(std::int64_t n, const GroupElement& a) {
  GroupElement r = a;
  for (auto& c : r.coords_) c = checked_mul(n, c);
  return r;
}

std::string to_string(const std::vector<std::int64_t>& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  os << ')';
  return os.str();
}

std::string to_string(const GroupElement& x) { return to_string(x.coords()); }

std::ostream& operator<<(std::ostream& os, const GroupElement& x) { return os << to_string(x); }

}  // namespace flatgraph

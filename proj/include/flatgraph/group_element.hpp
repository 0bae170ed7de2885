#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

namespace flatgraph {

/// An element of H = Z^k, stored by coordinates in the standard generators.
class GroupElement {
 public:
  GroupElement() = default;
  explicit GroupElement(std::vector<std::int64_t> coords) : coords_(std::move(coords)) {}
  GroupElement(std::initializer_list<std::int64_t> coords) : coords_(coords) {}

  static GroupElement zero(std::size_t rank) { return GroupElement(std::vector<std::int64_t>(rank, 0)); }
  static GroupElement unit(std::size_t rank, std::size_t index);

  std::size_t rank() const { return coords_.size(); }
  const std::vector<std::int64_t>& coords() const { return coords_; }
  std::int64_t operator[](std::size_t i) const { return coords_[i]; }
  bool is_zero() const;

  /// Largest absolute coordinate.
  std::int64_t inf_norm() const;
  std::int64_t l1_norm() const;

  GroupElement& operator+=(const GroupElement& other);
  GroupElement& operator-=(const GroupElement& other);

  friend GroupElement operator+(GroupElement a, const GroupElement& b) { return a += b; }
  friend GroupElement operator-(GroupElement a, const GroupElement& b) { return a -= b; }
  friend GroupElement operator-(const GroupElement& a);
  friend GroupElement operator*(std::int64_t n, const GroupElement& a);

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;

 private:
  std::vector<std::int64_t> coords_;
};

/// "(1,-1)" style rendering.
std::string to_string(const GroupElement& x);
std::string to_string(const std::vector<std::int64_t>& v);
std::ostream& operator<<(std::ostream& os, const GroupElement& x);

/// Calls `visit` for every point of the box [-radius, radius]^rank in lexicographic order.
template <typename Visitor>
void for_each_in_box(std::size_t rank, std::int64_t radius, Visitor&& visit) {
  std::vector<std::int64_t> c(rank, -radius);
  if (radius < 0) return;
  while (true) {
    visit(GroupElement(c));
    std::size_t i = rank;
    while (i > 0) {
      --i;
      if (c[i] < radius) {
        ++c[i];
        break;
      }
      c[i] = -radius;
      if (i == 0) return;
    }
    if (rank == 0) return;
  }
}

}  // namespace flatgraph

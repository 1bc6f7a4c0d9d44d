#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>

namespace horocanon {

/// A permutation of {0,1,2,3}, stored as its image table.
class Perm4 {
 public:
  constexpr Perm4() : image_{0, 1, 2, 3} {}
  constexpr Perm4(int a, int b, int c, int d)
      : image_{static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b),
               static_cast<std::uint8_t>(c), static_cast<std::uint8_t>(d)} {}

  constexpr int operator[](int i) const { return image_[i]; }

  /// Composition: (p * q)[i] = p[q[i]].
  constexpr Perm4 operator*(const Perm4& q) const {
    return Perm4(image_[q[0]], image_[q[1]], image_[q[2]], image_[q[3]]);
  }

  constexpr Perm4 inverse() const {
    std::array<int, 4> inv{};
    for (int i = 0; i < 4; ++i) inv[image_[i]] = i;
    return Perm4(inv[0], inv[1], inv[2], inv[3]);
  }

  /// +1 for even permutations, -1 for odd ones.
  constexpr int sign() const {
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (image_[i] > image_[j]) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
  }

  constexpr bool is_valid() const {
    unsigned seen = 0;
    for (auto v : image_) {
      if (v > 3) return false;
      seen |= 1u << v;
    }
    return seen == 0xF;
  }

  /// Index in the lexicographic ordering of all 24 permutations.
  int index() const;
  static Perm4 from_index(int index);

  /// Transposition of a and b.
  static constexpr Perm4 swap(int a, int b) {
    Perm4 p;
    p.image_[a] = static_cast<std::uint8_t>(b);
    p.image_[b] = static_cast<std::uint8_t>(a);
    return p;
  }

  /// Image digits, e.g. "1032".
  std::string str() const;

  friend constexpr bool operator==(const Perm4&, const Perm4&) = default;

 private:
  std::array<std::uint8_t, 4> image_;
};

/// The six edges of a tetrahedron as vertex pairs, in lexicographic order.
inline constexpr std::array<std::array<int, 2>, 6> kEdgeVertices{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

/// Edge index (0..5) of the edge joining vertices a != b.
constexpr int edge_index(int a, int b) {
  if (a > b) std::swap(a, b);
  return a == 0 ? b - 1 : a + b;
}

/// Which pair of opposite edges {01,23}, {02,13}, {03,12} the edge ab belongs to.
constexpr int opposite_pair(int a, int b) {
  int e = edge_index(a, b);
  return e < 3 ? e : 5 - e;
}

}  // namespace horocanon

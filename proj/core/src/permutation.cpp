#include "horocanon/permutation.hpp"

#include <algorithm>
#include <stdexcept>

namespace horocanon {

namespace {

std::array<Perm4, 24> make_table() {
  std::array<Perm4, 24> table;
  std::array<int, 4> v{0, 1, 2, 3};
  int k = 0;
  do {
    table[k++] = Perm4(v[0], v[1], v[2], v[3]);
  } while (std::next_permutation(v.begin(), v.end()));
  return table;
}

const std::array<Perm4, 24>& table() {
  static const std::array<Perm4, 24> t = make_table();
  return t;
}

}  // namespace

int Perm4::index() const {
  // Lehmer code.
  int idx = 0;
  static constexpr int kFactorial[4] = {6, 2, 1, 1};
  for (int i = 0; i < 4; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < 4; ++j)
      if (image_[j] < image_[i]) ++smaller;
    idx += smaller * kFactorial[i];
  }
  return idx;
}

Perm4 Perm4::from_index(int index) {
  if (index < 0 || index >= 24) throw std::out_of_range("permutation index");
  return table()[index];
}

std::string Perm4::str() const {
  std::string s(4, '0');
  for (int i = 0; i < 4; ++i) s[i] = static_cast<char>('0' + image_[i]);
  return s;
}

}  // namespace horocanon

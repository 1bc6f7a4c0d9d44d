#include <algorithm>
#include <limits>

#include "horocanon/error.hpp"
#include "horocanon/triangulation.hpp"

namespace horocanon {

namespace {

constexpr std::string_view kDigits = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz";

int digit_width(int n) {
  int width = 1;
  for (long cap = 52; cap < n; cap *= 52) ++width;
  return width;
}

// Breadth-first encoding from tetrahedron `start` relabelled by `start_map`
// (new label -> old label). Entry 4k+f is 24*destination + permutation index
// for face f of the k-th tetrahedron reached. Stops early once the encoding
// exceeds `best`.
bool encode(const Triangulation& tri, int start, const Perm4& start_map, std::vector<int>& out,
            const std::vector<int>* best) {
  const int n = tri.size();
  std::vector<int> index(n, -1);
  std::vector<int> order;
  std::vector<Perm4> label(n);
  order.reserve(n);
  index[start] = 0;
  label[start] = start_map;
  order.push_back(start);
  out.clear();
  bool tied = best != nullptr;
  for (int k = 0; k < n; ++k) {
    const int t = order[k];
    for (int f = 0; f < 4; ++f) {
      const int F = label[t][f];
      const Slot& s = tri.table()[t][F];
      if (index[s.tet] < 0) {
        index[s.tet] = static_cast<int>(order.size());
        label[s.tet] = s.perm * label[t];
        order.push_back(s.tet);
      }
      const Perm4 perm = label[s.tet].inverse() * s.perm * label[t];
      const int code = 24 * index[s.tet] + perm.index();
      if (tied) {
        const int ref = (*best)[out.size()];
        if (code > ref) return false;
        if (code < ref) tied = false;
      }
      out.push_back(code);
    }
  }
  return true;
}

}  // namespace

std::string iso_signature(const Triangulation& tri) {
  const int n = tri.size();
  std::vector<int> best, current;
  bool have = false;
  for (int t = 0; t < n; ++t)
    for (int p = 0; p < 24; ++p) {
      if (encode(tri, t, Perm4::from_index(p), current, have ? &best : nullptr)) {
        if (!have || current < best) best = current;
        have = true;
      }
    }

  const int width = digit_width(n);
  std::string sig = std::to_string(n);
  sig.reserve(sig.size() + best.size() * (width + 1));
  for (int code : best) {
    int dest = code / 24;
    std::string digits(width, kDigits[0]);
    for (int i = width - 1; i >= 0; --i) {
      digits[i] = kDigits[dest % 52];
      dest /= 52;
    }
    sig += digits;
    sig += kDigits[code % 24];
  }
  return sig;
}

Triangulation from_iso_signature(std::string_view sig) {
  size_t pos = 0;
  long n = 0;
  while (pos < sig.size() && sig[pos] >= '0' && sig[pos] <= '9') {
    n = n * 10 + (sig[pos++] - '0');
    if (n > 1000000) break;
  }
  if (pos == 0 || n <= 0 || n > 1000000) throw Error(ErrorCode::ParseError, "bad signature prefix");
  const int width = digit_width(static_cast<int>(n));
  if (sig.size() - pos != static_cast<size_t>(4 * n * (width + 1)))
    throw Error(ErrorCode::ParseError, "signature length does not match its tetrahedron count");

  GluingTable table(n);
  for (int t = 0; t < n; ++t)
    for (int f = 0; f < 4; ++f) {
      long dest = 0;
      for (int i = 0; i < width; ++i) {
        const auto d = kDigits.find(sig[pos++]);
        if (d == std::string_view::npos) throw Error(ErrorCode::ParseError, "bad signature digit");
        dest = dest * 52 + static_cast<long>(d);
      }
      const auto p = kDigits.find(sig[pos++]);
      if (p == std::string_view::npos || p >= 24 || dest >= n)
        throw Error(ErrorCode::ParseError, "bad signature entry");
      table[t][f] = Slot{static_cast<int>(dest), Perm4::from_index(static_cast<int>(p))};
    }
  return Triangulation::from_table(std::move(table));
}

bool are_isomorphic(const Triangulation& a, const Triangulation& b) {
  return a.size() == b.size() && iso_signature(a) == iso_signature(b);
}

}  // namespace horocanon

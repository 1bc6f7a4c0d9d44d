#include "horocanon/enumeration.hpp"

#include <algorithm>
#include <filesystem>
#include <optional>
#include <thread>

#include "horocanon/error.hpp"

namespace horocanon {

bool EnumerationFilter::accepts(const Triangulation& tri) const {
  switch (target) {
    case EnumerationTarget::Any: return true;
    case EnumerationTarget::Closed: return classify_links(tri) == LinkType::Closed;
    case EnumerationTarget::Cusped: return classify_links(tri) == LinkType::Cusped;
  }
  return false;
}

namespace {

void check_ceiling(int n, const EnumerationFilter& filter) {
  if (n < 1) throw Error(ErrorCode::CeilingExceeded, "tetrahedron count must be at least 1");
  if (n > filter.max_n)
    throw Error(ErrorCode::CeilingExceeded, "n = " + std::to_string(n) + " exceeds the ceiling " +
                                                std::to_string(filter.max_n));
}

void sort_unique(std::vector<Candidate>& out) {
  std::sort(out.begin(), out.end(),
            [](const Candidate& a, const Candidate& b) { return a.signature < b.signature; });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const Candidate& a, const Candidate& b) { return a.signature == b.signature; }),
            out.end());
}

std::vector<Candidate> finish(std::vector<GluingTable> tables, const EnumerationFilter& filter) {
  std::vector<Candidate> out;
  for (auto& table : tables) {
    Triangulation tri = Triangulation::from_table(std::move(table));
    if (!filter.accepts(tri)) continue;
    std::string sig = iso_signature(tri);
    Triangulation canonical = from_iso_signature(sig);
    out.push_back({std::move(sig), std::move(canonical)});
  }
  sort_unique(out);
  return out;
}

class Search {
 public:
  Search(int n, bool prune) : n_(n), prune_(prune), table_(n), sign_(n, 0) {}

  struct Choice {
    int tet;
    int face;
    Perm4 perm;
    bool introduces = false;
  };

  // Options for the first unglued face; empty when that face cannot be
  // glued without leaving the component closed off early.
  std::vector<Choice> choices(FaceRef at) const {
    std::vector<Choice> out;
    if (discovered_ < n_) out.push_back({discovered_, at.face, Perm4(), true});
    for (int u = at.tet; u < discovered_; ++u)
      for (int g = 0; g < 4; ++g) {
        if (table_[u][g].tet >= 0 || (u == at.tet && g <= at.face)) continue;
        const bool want_odd = sign_[u] == sign_[at.tet];
        for (int p = 0; p < 24; ++p) {
          Perm4 perm = Perm4::from_index(p);
          if (perm[at.face] == g && (perm.sign() < 0) == want_odd) out.push_back({u, g, perm, false});
        }
      }
    return out;
  }

  void start() {
    table_.assign(n_, {});
    sign_.assign(n_, 0);
    sign_[0] = 1;
    discovered_ = 1;
  }

  std::optional<FaceRef> first_unglued() const {
    for (int t = 0; t < discovered_; ++t)
      for (int f = 0; f < 4; ++f)
        if (table_[t][f].tet < 0) return FaceRef{t, f};
    return std::nullopt;
  }

  void apply(FaceRef at, const Choice& c) {
    if (c.introduces) {
      sign_[c.tet] = c.perm.sign() < 0 ? sign_[at.tet] : -sign_[at.tet];
      ++discovered_;
    }
    table_[at.tet][at.face] = Slot{c.tet, c.perm};
    table_[c.tet][c.face] = Slot{at.tet, c.perm.inverse()};
  }

  void undo(FaceRef at, const Choice& c) {
    table_[at.tet][at.face] = Slot{};
    table_[c.tet][c.face] = Slot{};
    if (c.introduces) {
      sign_[c.tet] = 0;
      --discovered_;
    }
  }

  void run(FaceRef at, const Choice& first, std::vector<GluingTable>& out, SearchStats& stats) {
    apply(at, first);
    descend(out, stats);
    undo(at, first);
  }

 private:
  void descend(std::vector<GluingTable>& out, SearchStats& stats) {
    ++stats.nodes;
    if (prune_ && beaten()) return;
    auto at = first_unglued();
    if (!at) {
      if (discovered_ < n_) return;  // closed off before reaching every tetrahedron
      ++stats.leaves;
      out.push_back(table_);
      return;
    }
    for (const Choice& c : choices(*at)) {
      apply(*at, c);
      descend(out, stats);
      undo(*at, c);
    }
  }

  // True when some other start yields a smaller encoding prefix than the
  // table's own breadth-first encoding (which is the table itself).
  bool beaten() const {
    int own_known = 0;
    for (int t = 0; t < n_ && own_known == 4 * t; ++t)
      for (int f = 0; f < 4 && table_[t][f].tet >= 0; ++f) ++own_known;
    auto own = [&](int i) {
      const Slot& s = table_[i / 4][i % 4];
      return 24 * s.tet + s.perm.index();
    };

    std::vector<int> index(n_);
    std::vector<int> order;
    std::vector<Perm4> label(n_);
    for (int start = 0; start < discovered_; ++start)
      for (int p = 0; p < 24; ++p) {
        if (start == 0 && p == 0) continue;
        std::fill(index.begin(), index.end(), -1);
        order.assign(1, start);
        index[start] = 0;
        label[start] = Perm4::from_index(p);
        int pos = 0;
        bool decided = false;
        for (int k = 0; k < static_cast<int>(order.size()) && !decided; ++k) {
          const int t = order[k];
          for (int f = 0; f < 4; ++f, ++pos) {
            if (pos >= own_known) {
              decided = true;
              break;
            }
            const Slot& s = table_[t][label[t][f]];
            if (s.tet < 0) {
              decided = true;
              break;
            }
            if (index[s.tet] < 0) {
              index[s.tet] = static_cast<int>(order.size());
              label[s.tet] = s.perm * label[t];
              order.push_back(s.tet);
            }
            const int code = 24 * index[s.tet] + (label[s.tet].inverse() * s.perm * label[t]).index();
            const int mine = own(pos);
            if (code < mine) return true;
            if (code > mine) {
              decided = true;
              break;
            }
          }
        }
      }
    return false;
  }

  int n_;
  bool prune_;
  GluingTable table_;
  std::vector<int> sign_;
  int discovered_ = 0;
};

}  // namespace

std::vector<Candidate> symmetry_reduced_search(int n, const EnumerationFilter& filter,
                                               const SearchOptions& options, SearchStats* stats) {
  check_ceiling(n, filter);
  Search root(n, options.prune);
  root.start();
  const FaceRef first{0, 0};
  const auto first_choices = root.choices(first);

  const int workers = std::max(1, std::min<int>(options.threads, static_cast<int>(first_choices.size())));
  std::vector<std::vector<GluingTable>> found(workers);
  std::vector<SearchStats> counts(workers);
  auto work = [&](int w) {
    Search search(n, options.prune);
    for (size_t i = w; i < first_choices.size(); i += workers) {
      search.start();
      search.run(first, first_choices[i], found[w], counts[w]);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }

  std::vector<GluingTable> tables;
  SearchStats total;
  total.nodes = 1;
  for (int w = 0; w < workers; ++w) {
    for (auto& t : found[w]) tables.push_back(std::move(t));
    total.nodes += counts[w].nodes;
    total.leaves += counts[w].leaves;
  }
  if (stats) *stats = total;
  return finish(std::move(tables), filter);
}

std::vector<Candidate> enumerate_pairings(int n, const EnumerationFilter& filter, int threads) {
  SearchOptions options;
  options.threads = threads;
  return symmetry_reduced_search(n, filter, options);
}

std::vector<Candidate> enumerate_brute_force(int n, const EnumerationFilter& filter, SearchStats* stats) {
  check_ceiling(n, filter);
  const int faces = 4 * n;
  std::vector<int> mate(faces, -1);
  std::vector<int> perm_choice(faces, 0);
  std::vector<Candidate> out;
  SearchStats local;

  // Face maps sending face i to face j.
  std::array<std::array<std::vector<Perm4>, 4>, 4> maps;
  for (int p = 0; p < 24; ++p) {
    Perm4 perm = Perm4::from_index(p);
    for (int i = 0; i < 4; ++i) maps[i][perm[i]].push_back(perm);
  }

  std::vector<std::pair<int, int>> pairs;
  auto visit_maps = [&](auto&& self, size_t k) -> void {
    ++local.nodes;
    if (k == pairs.size()) {
      ++local.leaves;
      GluingTable table(n);
      for (size_t i = 0; i < pairs.size(); ++i) {
        const auto [a, b] = pairs[i];
        const Perm4 perm = maps[a % 4][b % 4][perm_choice[i]];
        table[a / 4][a % 4] = Slot{b / 4, perm};
        table[b / 4][b % 4] = Slot{a / 4, perm.inverse()};
      }
      try {
        Triangulation tri = Triangulation::from_table(std::move(table));
        if (!filter.accepts(tri)) return;
        std::string sig = iso_signature(tri);
        out.push_back({sig, from_iso_signature(sig)});
      } catch (const Error&) {
      }
      return;
    }
    for (int c = 0; c < 6; ++c) {
      perm_choice[k] = c;
      self(self, k + 1);
    }
  };
  auto visit_matchings = [&](auto&& self) -> void {
    int first = -1;
    for (int i = 0; i < faces; ++i)
      if (mate[i] < 0) {
        first = i;
        break;
      }
    if (first < 0) {
      perm_choice.assign(pairs.size(), 0);
      visit_maps(visit_maps, 0);
      return;
    }
    for (int j = first + 1; j < faces; ++j) {
      if (mate[j] >= 0) continue;
      mate[first] = j;
      mate[j] = first;
      pairs.emplace_back(first, j);
      self(self);
      pairs.pop_back();
      mate[first] = mate[j] = -1;
    }
  };
  visit_matchings(visit_matchings);
  sort_unique(out);
  if (stats) *stats = local;
  return out;
}

void write_candidates(const std::vector<Candidate>& candidates, const std::string& directory) {
  std::filesystem::create_directories(directory);
  for (const auto& c : candidates)
    write_file(c.triangulation, (std::filesystem::path(directory) / c.signature).string());
}

}  // namespace horocanon

#include <algorithm>
#include <cmath>
#include <numeric>

#include "selfsim/graph.hpp"

namespace selfsim::graph {

std::string kind_name(EdgeKind k) {
  switch (k) {
    case EdgeKind::Normal: return "normal";
    case EdgeKind::Loop: return "loop";
    case EdgeKind::E: return "e";
  }
  return "?";
}

std::size_t LabeledMultigraph::loopless_edge_count() const {
  return static_cast<std::size_t>(
      std::count_if(edges.begin(), edges.end(), [](const Edge& e) { return e.kind != EdgeKind::Loop; }));
}

std::size_t LabeledMultigraph::loop_count() const { return edges.size() - loopless_edge_count(); }

std::vector<std::size_t> LabeledMultigraph::loopless_degrees() const {
  std::vector<std::size_t> d(vertices.size(), 0);
  for (const auto& e : edges) {
    if (e.kind == EdgeKind::Loop) continue;
    ++d[e.u];
    ++d[e.v];
  }
  return d;
}

std::map<std::string, std::size_t> LabeledMultigraph::loopless_label_counts() const {
  std::map<std::string, std::size_t> m;
  for (const auto& e : edges)
    if (e.kind != EdgeKind::Loop) ++m[e.label];
  return m;
}

std::optional<std::size_t> LabeledMultigraph::find_vertex(const std::string& id) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i].id == id) return i;
  return std::nullopt;
}

std::size_t LabeledMultigraph::vertex(const std::string& id) const {
  auto v = find_vertex(id);
  if (!v) throw UnsupportedVertex("no vertex '" + id + "'");
  return *v;
}

LabeledMultigraph build_schreier(Family family, int n) {
  if (family == Family::Sierpinski) throw FamilyMismatch("sierpinski graphs are built by contraction");
  return build_schreier(table_for(family), n);
}

LabeledMultigraph build_family_graph(Family family, int n) {
  if (family == Family::Sierpinski) return contract_to_sierpinski(build_schreier(Family::Hanoi, n));
  return build_schreier(family, n);
}

LabeledMultigraph build_schreier(const GroupTable& table, int n) {
  if (n < 1) throw ConstructionError("level must be at least 1");
  if (static_cast<double>(n) * std::log2(static_cast<double>(table.q())) > 30)
    throw UnsupportedLevel("level too large to materialise");
  LabeledMultigraph g;
  g.family = table.family();
  g.level = n;
  g.labeling = "schreier";
  std::uint64_t count = 1;
  for (int i = 0; i < n; ++i) count *= static_cast<std::uint64_t>(table.q());
  g.vertices.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) {
    Word w = Word::from_index(table.q(), n, k);
    g.vertices.push_back({w.to_string(), w});
  }
  for (std::size_t s = 0; s < table.generators().size(); ++s) {
    const std::string& label = table.generators()[s].name;
    const bool involution = table.is_involution(s);
    const auto perm = table.permutation(s, n);
    for (std::uint64_t u = 0; u < count; ++u) {
      std::uint64_t v = perm[u];
      if (v == u) {
        g.edges.push_back({u, u, label, EdgeKind::Loop, -1});
      } else if (!involution || u < v) {
        g.edges.push_back({u, v, label, EdgeKind::Normal, -1});
      }
    }
  }
  return g;
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  // Keeps the smaller index as root, i.e. the lexicographically least word.
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

}  // namespace

LabeledMultigraph contract_to_sierpinski(const LabeledMultigraph& hanoi) {
  if (hanoi.family != Family::Hanoi || hanoi.labeling != "schreier")
    throw FamilyMismatch("contraction needs a Hanoi Schreier graph");
  const std::size_t V = hanoi.vertices.size();
  auto differ_at = [&](const Edge& e) {
    const auto& a = hanoi.vertices[e.u].word->letters;
    const auto& b = hanoi.vertices[e.v].word->letters;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) return i;
    return a.size();
  };
  UnionFind uf(V);
  for (const auto& e : hanoi.edges)
    if (e.kind != EdgeKind::Loop && differ_at(e) >= 1) uf.unite(e.u, e.v);

  LabeledMultigraph g;
  g.family = Family::Sierpinski;
  g.level = hanoi.level;
  g.labeling = "schreier";
  std::vector<std::size_t> new_index(V, V);
  for (std::size_t i = 0; i < V; ++i)
    if (uf.find(i) == i) {
      new_index[i] = g.vertices.size();
      g.vertices.push_back(hanoi.vertices[i]);
    }
  for (const auto& e : hanoi.edges) {
    if (e.kind == EdgeKind::Loop) {
      std::size_t r = new_index[uf.find(e.u)];
      g.edges.push_back({r, r, e.label, EdgeKind::Loop, -1});
      continue;
    }
    if (differ_at(e) >= 1) continue;
    // The triangle of a first-letter edge is determined by the common suffix.
    const Word& w = *hanoi.vertices[e.u].word;
    std::uint64_t cell = 0;
    for (std::size_t i = 1; i < w.letters.size(); ++i) cell = cell * 3 + w.letters[i];
    g.edges.push_back({new_index[uf.find(e.u)], new_index[uf.find(e.v)], e.label, EdgeKind::Normal,
                       static_cast<long>(cell)});
  }
  return g;
}

LabeledMultigraph rotation_invariant_fixture(int n) {
  struct Arc {
    const char* u;
    const char* v;
    const char* label;
  };
  std::vector<Arc> arcs;
  std::vector<std::string> names;
  if (n == 2) {
    names = {"D", "E", "F", "G", "H", "I"};
    arcs = {{"E", "D", "a"}, {"F", "E", "b"}, {"G", "F", "a"}, {"H", "G", "b"}, {"I", "H", "a"},
            {"D", "I", "b"}, {"I", "E", "c"}, {"E", "G", "c"}, {"G", "I", "c"}};
  } else if (n == 3) {
    names = {"A", "B", "C", "D", "E", "F", "G", "H", "I", "L", "M", "N", "O", "P", "Q"};
    arcs = {{"E", "D", "b"}, {"D", "C", "a"}, {"C", "B", "b"}, {"B", "A", "a"}, {"A", "N", "b"},
            {"N", "M", "a"}, {"M", "L", "b"}, {"L", "I", "a"}, {"I", "H", "b"}, {"H", "G", "a"},
            {"G", "F", "b"}, {"F", "E", "a"}, {"N", "B", "c"}, {"O", "C", "a"}, {"M", "O", "b"},
            {"P", "D", "c"}, {"L", "Q", "c"}, {"B", "O", "c"}, {"O", "N", "c"}, {"C", "P", "b"},
            {"P", "G", "a"}, {"D", "F", "c"}, {"Q", "M", "a"}, {"G", "Q", "b"}, {"H", "L", "c"},
            {"F", "P", "c"}, {"Q", "H", "c"}};
  } else {
    throw UnsupportedLevel("rotation-invariant labelings are available for n = 2, 3 only");
  }
  LabeledMultigraph g;
  g.family = Family::Sierpinski;
  g.level = n;
  g.labeling = "rotation-invariant";
  for (const auto& s : names) g.vertices.push_back({s, std::nullopt});
  for (const auto& s : arcs) g.edges.push_back({g.vertex(s.u), g.vertex(s.v), s.label, EdgeKind::Normal, -1});
  return g;
}

LabeledMultigraph without_loops(const LabeledMultigraph& g) {
  LabeledMultigraph out = g;
  out.edges.clear();
  for (const auto& e : g.edges)
    if (e.kind != EdgeKind::Loop) out.edges.push_back(e);
  return out;
}

Corners corners(const LabeledMultigraph& g) {
  if (g.family != Family::Hanoi && g.family != Family::Sierpinski)
    throw FamilyMismatch("corners exist for hanoi and sierpinski graphs");
  if (g.labeling == "rotation-invariant") {
    if (g.level == 2) return {g.vertex("F"), g.vertex("H"), g.vertex("D")};
    return {g.vertex("A"), g.vertex("I"), g.vertex("E")};
  }
  auto find_word = [&](int letter) {
    std::string id(static_cast<std::size_t>(g.level), static_cast<char>('0' + letter));
    return g.vertex(id);
  };
  return {find_word(0), find_word(2), find_word(1)};
}

std::uint64_t formula_vertex_count(Family f, int n) {
  auto p = [](std::uint64_t b, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
  };
  switch (f) {
    case Family::Grigorchuk:
    case Family::Basilica: return p(2, n);
    case Family::Hanoi: return p(3, n);
    case Family::Sierpinski: return (p(3, n) + 3) / 2;
  }
  return 0;
}

std::uint64_t formula_edge_count(Family f, int n) {
  auto p = [](std::uint64_t b, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
  };
  switch (f) {
    case Family::Grigorchuk: return 3 * p(2, n - 1) - 2;
    case Family::Basilica: return n == 1 ? 2 : 3 * p(2, n - 1);
    case Family::Hanoi: return (p(3, n + 1) - 3) / 2;
    case Family::Sierpinski: return p(3, n);
  }
  return 0;
}

CycleRank cycle_space_rank(const LabeledMultigraph& g) {
  UnionFind uf(g.vertices.size());
  std::size_t comps = g.vertices.size();
  std::int64_t E = 0;
  for (const auto& e : g.edges) {
    if (e.kind == EdgeKind::Loop) continue;
    ++E;
    if (uf.unite(e.u, e.v)) --comps;
  }
  return {E - static_cast<std::int64_t>(g.vertices.size()) + static_cast<std::int64_t>(comps), comps};
}

CycleCensus cycle_census(const LabeledMultigraph& g) {
  if (g.labeling != "schreier" || g.family == Family::Sierpinski)
    throw FamilyMismatch("cycle census needs a Schreier graph of a group action");
  const GroupTable& table = table_for(g.family);
  CycleCensus c;
  for (std::size_t s = 0; s < table.generators().size(); ++s) {
    const std::string& label = table.generators()[s].name;
    auto perm = table.permutation(s, g.level);
    std::vector<bool> seen(perm.size(), false);
    c.loops[label] = 0;
    for (std::uint64_t u = 0; u < perm.size(); ++u) {
      if (seen[u]) continue;
      std::size_t len = 0;
      for (std::uint64_t x = u; !seen[x]; x = perm[x]) {
        seen[x] = true;
        ++len;
      }
      if (len == 1)
        ++c.loops[label];
      else
        ++c.cycles[label][len];
    }
  }
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::string>> by_pair;
  for (const auto& e : g.edges) {
    if (e.kind == EdgeKind::Loop) continue;
    by_pair[{std::min(e.u, e.v), std::max(e.u, e.v)}].push_back(e.label);
  }
  for (auto& [pair, labels] : by_pair) {
    if (labels.size() != 2) continue;
    std::sort(labels.begin(), labels.end());
    ++c.parallel_pairs[{labels[0], labels[1]}];
  }
  return c;
}

}  // namespace selfsim::graph

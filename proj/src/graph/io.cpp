#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <functional>
#include <sstream>

#include "selfsim/graph.hpp"

namespace selfsim::graph {

nlohmann::json to_json(const LabeledMultigraph& g) {
  nlohmann::json vertices = nlohmann::json::array();
  for (const auto& v : g.vertices) vertices.push_back(v.id);
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.edges)
    edges.push_back({{"u", g.vertices[e.u].id},
                     {"v", g.vertices[e.v].id},
                     {"label", e.label},
                     {"kind", kind_name(e.kind)}});
  return {{"family", family_name(g.family)},
          {"level", g.level},
          {"labeling", g.labeling},
          {"vertices", vertices},
          {"edges", edges}};
}

std::string to_dot(const LabeledMultigraph& g, bool omit_loops) {
  std::ostringstream os;
  os << "graph \"" << family_name(g.family) << "_" << g.level << "\" {\n";
  for (const auto& v : g.vertices) os << "  \"" << v.id << "\";\n";
  for (const auto& e : g.edges) {
    if (e.kind == EdgeKind::Loop && omit_loops) continue;
    os << "  \"" << g.vertices[e.u].id << "\" -- \"" << g.vertices[e.v].id << "\" [label=\"" << e.label
       << "\"";
    if (e.kind == EdgeKind::Loop) os << ", style=dashed, loop=true";
    if (e.kind == EdgeKind::E) os << ", style=bold";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

namespace {

struct Adjacency {
  std::size_t n = 0;
  // count[i][j] per kind: 0 normal, 1 e-edge
  std::vector<std::vector<std::array<int, 2>>> count;
  std::vector<int> loops;
  std::vector<std::vector<std::size_t>> nbrs;

  explicit Adjacency(const LabeledMultigraph& g)
      : n(g.vertices.size()), count(n, std::vector<std::array<int, 2>>(n, {0, 0})), loops(n, 0), nbrs(n) {
    for (const auto& e : g.edges) {
      if (e.kind == EdgeKind::Loop) {
        ++loops[e.u];
        continue;
      }
      int k = e.kind == EdgeKind::E ? 1 : 0;
      ++count[e.u][e.v][k];
      ++count[e.v][e.u][k];
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (count[i][j][0] + count[i][j][1] > 0) nbrs[i].push_back(j);
  }
};

// Colour refinement on both graphs with shared colour names.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> refine(const Adjacency& a, const Adjacency& b) {
  using Sig = std::vector<long>;
  std::vector<std::size_t> ca(a.n, 0), cb(b.n, 0);
  for (std::size_t i = 0; i < a.n; ++i) ca[i] = static_cast<std::size_t>(a.loops[i]);
  for (std::size_t i = 0; i < b.n; ++i) cb[i] = static_cast<std::size_t>(b.loops[i]);
  for (std::size_t round = 0; round < a.n + 1; ++round) {
    std::map<Sig, std::size_t> names;
    auto signature = [](const Adjacency& g, const std::vector<std::size_t>& c, std::size_t v) {
      Sig s{static_cast<long>(c[v])};
      std::vector<long> parts;
      for (auto w : g.nbrs[v])
        parts.push_back(static_cast<long>(c[w]) * 1000 + g.count[v][w][0] * 10 + g.count[v][w][1]);
      std::sort(parts.begin(), parts.end());
      s.insert(s.end(), parts.begin(), parts.end());
      return s;
    };
    std::vector<Sig> sa(a.n), sb(b.n);
    for (std::size_t i = 0; i < a.n; ++i) sa[i] = signature(a, ca, i);
    for (std::size_t i = 0; i < b.n; ++i) sb[i] = signature(b, cb, i);
    for (const auto& s : sa) names.emplace(s, 0);
    for (const auto& s : sb) names.emplace(s, 0);
    std::size_t id = 0;
    for (auto& kv : names) kv.second = id++;
    std::vector<std::size_t> na(a.n), nb(b.n);
    for (std::size_t i = 0; i < a.n; ++i) na[i] = names[sa[i]];
    for (std::size_t i = 0; i < b.n; ++i) nb[i] = names[sb[i]];
    std::set<std::size_t> before(ca.begin(), ca.end()), after(na.begin(), na.end());
    bool stable = after.size() == before.size();
    ca = std::move(na);
    cb = std::move(nb);
    if (stable && round > 0) break;
  }
  return {ca, cb};
}

}  // namespace

bool isomorphic(const LabeledMultigraph& ga, const LabeledMultigraph& gb) {
  if (ga.vertices.size() != gb.vertices.size() || ga.edges.size() != gb.edges.size()) return false;
  Adjacency a(ga), b(gb);
  auto [ca, cb] = refine(a, b);
  {
    auto sa = ca, sb = cb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
  }
  // BFS order on a so that each vertex after the first has a mapped neighbour.
  std::vector<std::size_t> order;
  std::vector<bool> placed(a.n, false);
  for (std::size_t s = 0; s < a.n; ++s) {
    if (placed[s]) continue;
    placed[s] = true;
    order.push_back(s);
    for (std::size_t k = order.size() - 1; k < order.size(); ++k)
      for (auto w : a.nbrs[order[k]])
        if (!placed[w]) {
          placed[w] = true;
          order.push_back(w);
        }
  }
  std::vector<long> map_ab(a.n, -1);
  std::vector<bool> used(b.n, false);
  std::function<bool(std::size_t)> extend = [&](std::size_t k) -> bool {
    if (k == order.size()) return true;
    std::size_t v = order[k];
    for (std::size_t w = 0; w < b.n; ++w) {
      if (used[w] || cb[w] != ca[v]) continue;
      bool ok = true;
      for (std::size_t j = 0; j < k && ok; ++j) {
        std::size_t x = order[j];
        ok = a.count[v][x] == b.count[w][static_cast<std::size_t>(map_ab[x])];
      }
      if (!ok) continue;
      map_ab[v] = static_cast<long>(w);
      used[w] = true;
      if (extend(k + 1)) return true;
      used[w] = false;
      map_ab[v] = -1;
    }
    return false;
  };
  return extend(0);
}

}  // namespace selfsim::graph

#include "selfsim/oracle.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace selfsim::oracle {

using graph::EdgeKind;

namespace {

using Bits = std::vector<std::uint64_t>;

void xor_into(Bits& a, const Bits& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] ^= b[i];
}

// Loopless edges, a spanning forest and the fundamental cycles.
struct CycleSpace {
  std::vector<std::size_t> edge_ids;  // loopless edges of g, in order
  std::size_t words = 0;
  std::vector<Bits> basis;
  std::vector<Bits> root_path;        // per vertex: tree path to its component root
  std::vector<std::size_t> component;

  explicit CycleSpace(const LabeledMultigraph& g) {
    for (std::size_t i = 0; i < g.edges.size(); ++i)
      if (g.edges[i].kind != EdgeKind::Loop) edge_ids.push_back(i);
    words = (edge_ids.size() + 63) / 64;
    const std::size_t V = g.vertices.size();
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(V);
    for (std::size_t k = 0; k < edge_ids.size(); ++k) {
      const auto& e = g.edges[edge_ids[k]];
      adj[e.u].push_back({e.v, k});
      adj[e.v].push_back({e.u, k});
    }
    root_path.assign(V, Bits(words, 0));
    component.assign(V, V);
    std::vector<bool> tree(edge_ids.size(), false);
    for (std::size_t s = 0; s < V; ++s) {
      if (component[s] != V) continue;
      component[s] = s;
      std::vector<std::size_t> queue{s};
      for (std::size_t h = 0; h < queue.size(); ++h) {
        std::size_t x = queue[h];
        for (auto [y, k] : adj[x]) {
          if (component[y] != V) continue;
          component[y] = s;
          tree[k] = true;
          root_path[y] = root_path[x];
          root_path[y][k / 64] ^= 1ull << (k % 64);
          queue.push_back(y);
        }
      }
    }
    for (std::size_t k = 0; k < edge_ids.size(); ++k) {
      if (tree[k]) continue;
      const auto& e = g.edges[edge_ids[k]];
      Bits c = root_path[e.u];
      xor_into(c, root_path[e.v]);
      c[k / 64] ^= 1ull << (k % 64);
      basis.push_back(std::move(c));
    }
  }
};

// Accumulates subset counts by per-variable edge counts in a dense table.
struct Tally {
  std::vector<std::string> vars;
  std::vector<Bits> masks;
  std::vector<std::size_t> radix;
  std::vector<std::uint64_t> counts;

  Tally(const LabeledMultigraph& g, const CycleSpace& cs, bool weighted) {
    std::map<std::string, Bits> by_label;
    for (std::size_t k = 0; k < cs.edge_ids.size(); ++k) {
      std::string key = weighted ? g.edges[cs.edge_ids[k]].label : std::string("z");
      auto& m = by_label.try_emplace(key, Bits(cs.words, 0)).first->second;
      m[k / 64] |= 1ull << (k % 64);
    }
    if (by_label.empty()) by_label.emplace(weighted ? std::string("a") : std::string("z"), Bits(cs.words, 0));
    std::size_t size = 1;
    for (auto& [label, m] : by_label) {
      vars.push_back(label);
      std::size_t n = 0;
      for (auto w : m) n += static_cast<std::size_t>(std::popcount(w));
      radix.push_back(n + 1);
      size *= n + 1;
      masks.push_back(std::move(m));
    }
    counts.assign(size, 0);
  }

  void add(const Bits& s) {
    std::size_t idx = 0;
    for (std::size_t l = 0; l < masks.size(); ++l) {
      std::size_t n = 0;
      for (std::size_t i = 0; i < s.size(); ++i) n += static_cast<std::size_t>(std::popcount(s[i] & masks[l][i]));
      idx = idx * radix[l] + n;
    }
    ++counts[idx];
  }

  LaurentPoly result() const {
    std::vector<std::pair<poly::Exponents, mpz_class>> terms;
    for (std::size_t idx = 0; idx < counts.size(); ++idx) {
      if (counts[idx] == 0) continue;
      poly::Exponents e(masks.size());
      std::size_t r = idx;
      for (std::size_t l = masks.size(); l-- > 0;) {
        e[l] = static_cast<int>(r % radix[l]);
        r /= radix[l];
      }
      terms.emplace_back(e, mpz_class(static_cast<unsigned long>(counts[idx])));
    }
    return LaurentPoly::from_terms(vars, terms);
  }
};

LaurentPoly walk_coset(const LabeledMultigraph& g, const CycleSpace& cs, Bits start, bool weighted,
                       std::size_t budget) {
  if (cs.basis.size() > budget) throw BudgetExceeded("cycle space rank over budget", cs.basis.size(), budget);
  Tally tally(g, cs, weighted);
  Bits cur = std::move(start);
  tally.add(cur);
  const std::uint64_t total = 1ull << cs.basis.size();
  for (std::uint64_t i = 1; i < total; ++i) {
    xor_into(cur, cs.basis[static_cast<std::size_t>(std::countr_zero(i))]);
    tally.add(cur);
  }
  return tally.result();
}

}  // namespace

LaurentPoly enumerate_polygons(const LabeledMultigraph& g, bool weighted, std::size_t rank_budget) {
  CycleSpace cs(g);
  return walk_coset(g, cs, Bits(cs.words, 0), weighted, rank_budget);
}

LaurentPoly enumerate_corner_paths(const LabeledMultigraph& g, std::size_t from, std::size_t to, bool weighted,
                                   std::size_t rank_budget) {
  if (from >= g.vertices.size() || to >= g.vertices.size()) throw UnsupportedVertex("corner index out of range");
  CycleSpace cs(g);
  if (cs.component[from] != cs.component[to]) return {};
  Bits start = cs.root_path[from];
  xor_into(start, cs.root_path[to]);
  return walk_coset(g, cs, std::move(start), weighted, rank_budget);
}

LaurentPoly enumerate_corner_paths(const LabeledMultigraph& g, const std::string& pair, bool weighted,
                                   std::size_t rank_budget) {
  auto c = graph::corners(g);
  if (pair == "lr") return enumerate_corner_paths(g, c.l, c.r, weighted, rank_budget);
  if (pair == "lu") return enumerate_corner_paths(g, c.l, c.u, weighted, rank_budget);
  if (pair == "ru") return enumerate_corner_paths(g, c.r, c.u, weighted, rank_budget);
  throw UnsupportedVertex("corner pair must be lr, lu or ru");
}

LaurentPoly spin_sum_partition(const LabeledMultigraph& g, bool per_label, std::size_t vertex_budget) {
  const std::size_t V = g.vertices.size();
  if (V > vertex_budget) throw BudgetExceeded("too many vertices for a spin sum", V, vertex_budget);
  std::map<std::string, std::size_t> label_index;
  for (const auto& e : g.edges)
    if (e.kind != EdgeKind::Loop) label_index.emplace(per_label ? "y_" + e.label : std::string("y"), 0);
  if (label_index.empty()) label_index.emplace("y", 0);
  std::vector<std::string> vars;
  for (auto& [name, idx] : label_index) {
    idx = vars.size();
    vars.push_back(name);
  }
  const std::size_t L = vars.size();
  std::vector<long> edges_per(L, 0);
  struct Half {
    std::size_t other, slot;
  };
  std::vector<std::vector<Half>> inc(V);
  for (const auto& e : g.edges) {
    if (e.kind == EdgeKind::Loop) continue;
    std::size_t slot = label_index[per_label ? "y_" + e.label : std::string("y")];
    ++edges_per[slot];
    inc[e.u].push_back({e.v, slot});
    inc[e.v].push_back({e.u, slot});
  }
  // exponent of slot l ranges over [-E_l, E_l]; index by (s + E_l) / 2.
  std::vector<std::size_t> radix(L);
  std::size_t size = 1;
  for (std::size_t l = 0; l < L; ++l) {
    radix[l] = static_cast<std::size_t>(edges_per[l]) + 1;
    size *= radix[l];
  }
  std::vector<std::uint64_t> counts(size, 0);
  std::vector<int> spin(V, 1);
  std::vector<long> s = edges_per;
  auto record = [&] {
    std::size_t idx = 0;
    for (std::size_t l = 0; l < L; ++l) idx = idx * radix[l] + static_cast<std::size_t>((s[l] + edges_per[l]) / 2);
    ++counts[idx];
  };
  record();
  const std::uint64_t total = 1ull << V;
  for (std::uint64_t i = 1; i < total; ++i) {
    std::size_t v = static_cast<std::size_t>(std::countr_zero(i));
    for (const auto& h : inc[v]) s[h.slot] -= 2L * spin[v] * spin[h.other];
    spin[v] = -spin[v];
    record();
  }
  std::vector<std::pair<poly::Exponents, mpz_class>> terms;
  for (std::size_t idx = 0; idx < size; ++idx) {
    if (counts[idx] == 0) continue;
    poly::Exponents e(L);
    std::size_t r = idx;
    for (std::size_t l = L; l-- > 0;) {
      e[l] = static_cast<int>(2 * (r % radix[l])) - static_cast<int>(edges_per[l]);
      r /= radix[l];
    }
    terms.emplace_back(e, mpz_class(static_cast<unsigned long>(counts[idx])));
  }
  return LaurentPoly::from_terms(vars, terms);
}

LaurentPoly default_matching_weight(const graph::Edge& e) {
  return e.kind == EdgeKind::E ? LaurentPoly::variable("z") : LaurentPoly::constant(1);
}

LaurentPoly enumerate_perfect_matchings(const LabeledMultigraph& g, const EdgeWeight& weight,
                                        std::size_t vertex_budget) {
  const std::size_t V = g.vertices.size();
  if (V > vertex_budget) throw BudgetExceeded("too many vertices for matching enumeration", V, vertex_budget);
  if (V % 2 == 1) return {};
  std::vector<std::vector<std::pair<std::size_t, LaurentPoly>>> adj(V);
  for (const auto& e : g.edges) {
    if (e.kind == EdgeKind::Loop) continue;
    LaurentPoly w = weight(e);
    adj[e.u].push_back({e.v, w});
    adj[e.v].push_back({e.u, w});
  }
  std::vector<bool> matched(V, false);
  LaurentPoly total;
  std::vector<LaurentPoly> stack{LaurentPoly::constant(1)};
  // Always match the lowest unmatched vertex.
  auto recurse = [&](auto&& self, std::size_t from) -> void {
    std::size_t v = from;
    while (v < V && matched[v]) ++v;
    if (v == V) {
      total += stack.back();
      return;
    }
    matched[v] = true;
    for (const auto& [w, wt] : adj[v]) {
      if (matched[w]) continue;
      matched[w] = true;
      stack.push_back(stack.back() * wt);
      self(self, v + 1);
      stack.pop_back();
      matched[w] = false;
    }
    matched[v] = false;
  };
  recurse(recurse, 0);
  return total;
}

}  // namespace selfsim::oracle

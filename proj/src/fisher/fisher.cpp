#include "selfsim/fisher.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "selfsim/errors.hpp"
#include "selfsim/genfun.hpp"
#include "selfsim/oracle.hpp"

namespace selfsim::fisher {

using graph::Edge;
using graph::EdgeKind;

namespace {

LabeledMultigraph strip(const LabeledMultigraph& g) {
  LabeledMultigraph s = g;
  for (auto& e : s.edges) {
    if (e.kind == EdgeKind::E) e.kind = EdgeKind::Normal;
    e.label.clear();
    e.cell = -1;
  }
  return s;
}

// Same graph with vertices renumbered in BFS order, which keeps the matching
// backtracking local.
LabeledMultigraph bfs_ordered(const LabeledMultigraph& g) {
  const std::size_t V = g.vertices.size();
  std::vector<std::vector<std::size_t>> adj(V);
  for (const auto& e : g.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<std::size_t> order, index(V, V);
  for (std::size_t s = 0; s < V; ++s) {
    if (index[s] != V) continue;
    index[s] = order.size();
    order.push_back(s);
    for (std::size_t k = order.size() - 1; k < order.size(); ++k)
      for (auto w : adj[order[k]])
        if (index[w] == V) {
          index[w] = order.size();
          order.push_back(w);
        }
  }
  LabeledMultigraph out = g;
  for (std::size_t i = 0; i < V; ++i) out.vertices[i] = g.vertices[order[i]];
  for (auto& e : out.edges) {
    e.u = index[e.u];
    e.v = index[e.v];
  }
  return out;
}

std::string describe(const Signature& s) {
  return std::to_string(s.vertices) + "V/" + std::to_string(s.edges) + "E";
}

}  // namespace

FisherResult fisher_transform(const LabeledMultigraph& y) {
  const std::size_t V = y.vertices.size();
  std::vector<std::vector<std::size_t>> inc(V);
  for (std::size_t i = 0; i < y.edges.size(); ++i) {
    const auto& e = y.edges[i];
    if (e.kind == EdgeKind::Loop) continue;
    inc[e.u].push_back(i);
    inc[e.v].push_back(i);
  }
  FisherResult r;
  auto& g = r.graph;
  g.family = y.family;
  g.level = y.level;
  g.labeling = y.labeling;
  r.map.gadgets.resize(V);
  r.map.e_edge.assign(y.edges.size(), -1);
  // Attachment vertex of each edge at its u end and v end.
  std::vector<std::array<long, 2>> attach(y.edges.size(), {-1, -1});
  auto set_attach = [&](std::size_t edge, std::size_t v, std::size_t at) {
    auto& a = attach[edge];
    if (y.edges[edge].u == v && a[0] < 0)
      a[0] = static_cast<long>(at);
    else
      a[1] = static_cast<long>(at);
  };

  for (std::size_t v = 0; v < V; ++v) {
    auto& gadget = r.map.gadgets[v];
    auto add_vertex = [&](const std::string& suffix) {
      g.vertices.push_back({y.vertices[v].id + "/" + suffix, std::nullopt});
      gadget.vertices.push_back(g.vertices.size() - 1);
      return g.vertices.size() - 1;
    };
    auto add_edge = [&](std::size_t a, std::size_t b) {
      g.edges.push_back({a, b, "1", EdgeKind::Normal, -1});
      gadget.edges.push_back(g.edges.size() - 1);
    };
    const auto& legs = inc[v];
    if (legs.size() == 2) {
      std::size_t p = add_vertex("0"), q = add_vertex("1");
      add_edge(p, q);
      set_attach(legs[0], v, p);
      set_attach(legs[1], v, q);
    } else if (legs.size() == 4) {
      std::map<long, std::vector<std::size_t>> sides;
      for (auto e : legs) sides[y.edges[e].cell].push_back(e);
      if (sides.size() != 2 || sides.count(-1) || sides.begin()->second.size() != 2)
        throw EmbeddingError("vertex " + y.vertices[v].id + " has no pairing of its legs by triangle");
      std::size_t p = add_vertex("P"), q = add_vertex("Q"), u = add_vertex("U");
      std::size_t rr = add_vertex("R"), s = add_vertex("S"), z = add_vertex("Z");
      add_edge(p, q);
      add_edge(q, u);
      add_edge(u, p);
      add_edge(q, rr);
      add_edge(rr, s);
      add_edge(s, z);
      add_edge(z, rr);
      const auto& first = sides.begin()->second;
      const auto& second = std::next(sides.begin())->second;
      set_attach(first[0], v, p);
      set_attach(first[1], v, u);
      set_attach(second[0], v, s);
      set_attach(second[1], v, z);
    } else {
      throw UnsupportedVertex("vertex " + y.vertices[v].id + " has degree " + std::to_string(legs.size()) +
                              "; only 2 and 4 are supported");
    }
  }
  for (std::size_t i = 0; i < y.edges.size(); ++i) {
    const auto& e = y.edges[i];
    if (e.kind == EdgeKind::Loop) continue;
    g.edges.push_back({static_cast<std::size_t>(attach[i][0]), static_cast<std::size_t>(attach[i][1]), e.label,
                       EdgeKind::E, -1});
    r.map.e_edge[i] = static_cast<long>(g.edges.size() - 1);
  }
  return r;
}

LabeledMultigraph delete_corners(const LabeledMultigraph& hanoi) {
  if (hanoi.family != graph::Family::Hanoi) throw FamilyMismatch("delete_corners needs a hanoi Schreier graph");
  auto c = graph::corners(hanoi);
  std::vector<bool> gone(hanoi.vertices.size(), false);
  gone[c.l] = gone[c.r] = gone[c.u] = true;
  LabeledMultigraph out;
  out.family = hanoi.family;
  out.level = hanoi.level;
  out.labeling = hanoi.labeling;
  std::vector<std::size_t> index(hanoi.vertices.size(), 0);
  for (std::size_t v = 0; v < hanoi.vertices.size(); ++v) {
    if (gone[v]) continue;
    index[v] = out.vertices.size();
    out.vertices.push_back(hanoi.vertices[v]);
  }
  for (const auto& e : hanoi.edges) {
    if (gone[e.u] || gone[e.v]) continue;
    Edge n = e;
    n.u = index[e.u];
    n.v = index[e.v];
    out.edges.push_back(n);
  }
  return out;
}

Signature signature(const LabeledMultigraph& g) {
  Signature s;
  s.vertices = g.vertices.size();
  s.edges = g.loopless_edge_count();
  s.degrees = g.loopless_degrees();
  std::sort(s.degrees.begin(), s.degrees.end());
  return s;
}

CorrespondenceReport verify_correspondence(int n) {
  if (n < 1 || n > 3) throw UnsupportedLevel("the correspondence is checked for levels 1 to 3");
  CorrespondenceReport rep;
  rep.level = n;
  auto omega = graph::build_family_graph(graph::Family::Sierpinski, n);
  auto fr = fisher_transform(omega);
  auto ref = delete_corners(graph::build_schreier(graph::Family::Hanoi, n + 1));

  rep.transformed = signature(fr.graph);
  rep.reference = signature(ref);
  rep.signatures_match = rep.transformed == rep.reference;
  if (!rep.signatures_match)
    rep.diffs.push_back("signatures differ: " + describe(rep.transformed) + " vs " + describe(rep.reference));

  std::map<std::string, std::size_t> e_labels;
  for (const auto& e : fr.graph.edges)
    if (e.kind == EdgeKind::E) ++e_labels[e.label];
  rep.labels_match = e_labels == omega.loopless_label_counts();
  if (!rep.labels_match) rep.diffs.push_back("e-edge label counts differ from the labels of the source graph");

  if (n <= 2) {
    rep.isomorphism_checked = true;
    rep.isomorphic = graph::isomorphic(strip(fr.graph), strip(ref));
    if (!rep.isomorphic) rep.diffs.push_back("transformed graph is not isomorphic to the corner-deleted graph");
  }

  rep.matching_gf = oracle::enumerate_perfect_matchings(fr.graph);
  rep.matchings = rep.matching_gf.sum_of_coefficients();
  auto gamma = genfun::sierpinski_gamma_closed(n).gamma;
  rep.polygons = gamma.sum_of_coefficients();
  if (rep.matchings != rep.polygons)
    rep.diffs.push_back("matchings " + rep.matchings.get_str() + " != polygons " + rep.polygons.get_str());

  const long edges = static_cast<long>(omega.loopless_edge_count());
  rep.reversed_gamma = LaurentPoly::variable("z", edges) * poly::invert_variable(gamma, "z");
  rep.generating_functions_match = rep.matching_gf == rep.reversed_gamma;
  if (!rep.generating_functions_match)
    rep.diffs.push_back("matching generating function " + rep.matching_gf.to_string() + " != z^" +
                        std::to_string(edges) + " Gamma(1/z) = " + rep.reversed_gamma.to_string());

  const auto ref_count = oracle::enumerate_perfect_matchings(bfs_ordered(ref), [](const Edge&) {
                           return LaurentPoly::constant(1);
                         }).sum_of_coefficients();
  if (ref_count != rep.matchings)
    rep.diffs.push_back("corner-deleted graph has " + ref_count.get_str() + " perfect matchings");
  return rep;
}

}  // namespace selfsim::fisher

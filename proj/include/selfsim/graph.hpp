#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "selfsim/errors.hpp"

namespace selfsim::graph {

enum class Family { Grigorchuk, Basilica, Hanoi, Sierpinski };

std::string family_name(Family f);
Family parse_family(const std::string& s);

// A vertex of the level-n rooted q-ary tree; letters[0] is the leftmost letter.
struct Word {
  int q = 2;
  std::vector<std::uint8_t> letters;

  std::size_t length() const { return letters.size(); }
  std::string to_string() const;
  // Base-q value with the first letter most significant: index order is lex order.
  std::uint64_t index() const;
  static Word from_index(int q, int n, std::uint64_t index);
  static Word parse(int q, const std::string& s);
  static Word constant(int q, int n, int letter);
  bool operator==(const Word& o) const { return q == o.q && letters == o.letters; }
  bool operator<(const Word& o) const { return letters < o.letters; }
};

// One generator given by its wreath recursion g = tau (g_0, ..., g_{q-1}).
// Restrictions name other generators, or "id" for the identity.
struct GeneratorDef {
  std::string name;
  std::vector<int> tau;
  std::vector<std::string> restrictions;
};

class GroupTable {
 public:
  GroupTable(Family family, int q, std::vector<GeneratorDef> gens);

  Family family() const { return family_; }
  int q() const { return q_; }
  const std::vector<GeneratorDef>& generators() const { return gens_; }
  std::size_t generator_index(const std::string& name) const;  // throws ConstructionError

  Word apply(const std::string& gen, const Word& w) const;
  Word apply(std::size_t gen, const Word& w) const;
  // Action on level-n vertices as a permutation of vertex indices.
  std::vector<std::uint64_t> permutation(std::size_t gen, int n) const;
  // Whether g*g is the identity on the whole tree (decided on the automaton).
  bool is_involution(std::size_t gen) const;

 private:
  Family family_;
  int q_;
  std::vector<GeneratorDef> gens_;
  std::vector<std::vector<int>> restr_;  // -1 = identity
};

const GroupTable& grigorchuk_table();
const GroupTable& basilica_table();
const GroupTable& hanoi_table();
const GroupTable& table_for(Family f);  // Sierpinski uses the Hanoi table

enum class EdgeKind { Normal, Loop, E };
std::string kind_name(EdgeKind k);

struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  std::string label;
  EdgeKind kind = EdgeKind::Normal;
  // Elementary triangle containing the edge (contracted Sierpinski graphs), else -1.
  long cell = -1;
};

struct Vertex {
  std::string id;
  std::optional<Word> word;
};

struct LabeledMultigraph {
  Family family = Family::Hanoi;
  int level = 0;
  std::string labeling = "schreier";
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;

  std::size_t vertex_count() const { return vertices.size(); }
  std::size_t loopless_edge_count() const;
  std::size_t loop_count() const;
  std::vector<std::size_t> loopless_degrees() const;
  std::map<std::string, std::size_t> loopless_label_counts() const;
  std::optional<std::size_t> find_vertex(const std::string& id) const;
  std::size_t vertex(const std::string& id) const;  // throws
};

// Schreier graph of the level-n action of a built-in group.
LabeledMultigraph build_schreier(Family family, int n);
LabeledMultigraph build_schreier(const GroupTable& table, int n);

// Contract Sigma_n (Hanoi) to Omega_n: every edge whose endpoint words differ at
// a position >= 2 is contracted. The graph must be a Hanoi Schreier graph.
LabeledMultigraph contract_to_sierpinski(const LabeledMultigraph& hanoi);

// Sigma_n for the group families, Omega_n (by contraction) for sierpinski.
LabeledMultigraph build_family_graph(Family family, int n);

// Rotation-invariant labelings of Omega_2 and Omega_3 transcribed from figures.
LabeledMultigraph rotation_invariant_fixture(int n);

// Indices of the corner vertices (left, right, up) = images of 0^n, 2^n, 1^n.
struct Corners {
  std::size_t l, r, u;
};
Corners corners(const LabeledMultigraph& g);

struct CycleCensus {
  // label -> (orbit length -> number of orbits of that length >= 2)
  std::map<std::string, std::map<std::size_t, std::uint64_t>> cycles;
  std::map<std::string, std::uint64_t> loops;  // fixed points per label
  // Vertex pairs joined by exactly two loopless edges, keyed by their labels (sorted).
  std::map<std::pair<std::string, std::string>, std::uint64_t> parallel_pairs;
};

CycleCensus cycle_census(const LabeledMultigraph& g);

struct CycleRank {
  std::int64_t rank = 0;
  std::size_t components = 0;
  bool connected() const { return components == 1; }
};
CycleRank cycle_space_rank(const LabeledMultigraph& g);

// Formula counts for Schreier / contracted graphs (validated against construction).
std::uint64_t formula_vertex_count(Family f, int n);
std::uint64_t formula_edge_count(Family f, int n);

nlohmann::json to_json(const LabeledMultigraph& g);
std::string to_dot(const LabeledMultigraph& g, bool omit_loops = false);

LabeledMultigraph without_loops(const LabeledMultigraph& g);

// Small-graph isomorphism test respecting edge kind (labels ignored).
bool isomorphic(const LabeledMultigraph& a, const LabeledMultigraph& b);

}  // namespace selfsim::graph

#pragma once

#include <string>
#include <vector>

#include "selfsim/graph.hpp"
#include "selfsim/poly.hpp"

namespace selfsim::fisher {

using graph::LabeledMultigraph;
using poly::LaurentPoly;

struct Gadget {
  std::vector<std::size_t> vertices;  // in the transformed graph
  std::vector<std::size_t> edges;     // internal edges
};

struct FisherGadgetMap {
  std::vector<Gadget> gadgets;          // per original vertex
  std::vector<long> e_edge;             // per original edge; -1 for loops
};

struct FisherResult {
  LabeledMultigraph graph;
  FisherGadgetMap map;
};

// Degree-2 vertices become an edge, degree-4 vertices two triangles joined by
// an edge. Legs of a degree-4 vertex are paired by Edge::cell. Loops are dropped.
FisherResult fisher_transform(const LabeledMultigraph& y);

// Sigma_n without its corners 0^n, 1^n, 2^n.
LabeledMultigraph delete_corners(const LabeledMultigraph& hanoi);

struct Signature {
  std::size_t vertices = 0, edges = 0;
  std::vector<std::size_t> degrees;  // sorted
  bool operator==(const Signature& o) const {
    return vertices == o.vertices && edges == o.edges && degrees == o.degrees;
  }
};
Signature signature(const LabeledMultigraph& g);

struct CorrespondenceReport {
  int level = 0;
  Signature transformed, reference;
  bool signatures_match = false;
  bool labels_match = false;         // e-edge label counts vs the labels of Omega_n
  bool isomorphism_checked = false;
  bool isomorphic = false;
  mpz_class matchings, polygons;
  bool generating_functions_match = false;
  LaurentPoly matching_gf, reversed_gamma;
  std::vector<std::string> diffs;
  bool ok() const { return diffs.empty(); }
};

// Omega_n against Sigma_{n+1} minus corners, for 1 <= n <= 3.
CorrespondenceReport verify_correspondence(int n);

}  // namespace selfsim::fisher

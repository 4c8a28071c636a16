#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "selfsim/graph.hpp"
#include "selfsim/poly.hpp"

namespace selfsim::genfun {

using graph::Family;
using poly::LaurentPoly;

enum class Labeling { Plain, Labels, Rotation };
std::string labeling_name(Labeling l);  // plain | labels | rotation
Labeling parse_labeling(const std::string& s);

// Image of each edge label; labels not listed map to the variable of the same name.
using LabelWeights = std::map<std::string, LaurentPoly>;
LaurentPoly weight_of(const LabelWeights& w, const std::string& label);

struct GenFunSet {
  Family family = Family::Hanoi;
  int level = 0;
  Labeling labeling = Labeling::Plain;
  LaurentPoly gamma;                         // closed polygons
  std::map<std::string, LaurentPoly> aux;    // corner-path functions
};

// Grigorchuk: numbers of b-c, b-d and c-d double edges at level n.
struct PairCounts {
  std::uint64_t x = 0, y = 0, w = 0;
  bool operator==(const PairCounts& o) const { return x == o.x && y == o.y && w == o.w; }
};
PairCounts grigorchuk_pair_counts(int n);            // closed forms by n mod 3
PairCounts grigorchuk_pair_counts_recursive(int n);  // X_n = W_{n-1} + 2^{n-2}, Y_n = X_{n-1}, W_n = Y_{n-1}
GenFunSet grigorchuk_gamma(int n, bool weighted, const LabelWeights& w = {});

// Basilica: Gamma is a product of (1 + label^length)^multiplicity over monochromatic cycles.
struct CycleFactor {
  std::string label;
  std::uint64_t length = 0;
  std::uint64_t multiplicity = 0;
};
std::vector<CycleFactor> basilica_cycle_factors(int n);
GenFunSet basilica_gamma(int n, bool weighted, const LabelWeights& w = {});

// psi_1..psi_count and phi_k = psi_k * var^(2^(k-1)). Hanoi uses z; Sierpinski uses u with z = u^2.
struct PsiTower {
  std::string var;
  std::vector<LaurentPoly> psi;
  std::vector<LaurentPoly> phi;
};
PsiTower psi_tower(Family f, int count);

GenFunSet hanoi_gamma_recursive(int n);
GenFunSet hanoi_gamma_closed(int n);
GenFunSet hanoi_gamma_weighted(int n, const LabelWeights& w = {});

GenFunSet sierpinski_gamma_recursive(int n);
GenFunSet sierpinski_gamma_closed(int n);
GenFunSet sierpinski_gamma_weighted(int n, const LabelWeights& w = {});
GenFunSet sierpinski_gamma_rotation_invariant(int n, const LabelWeights& w = {});
// Integral phi-form of the rotation-invariant closed formula; cross-check only.
GenFunSet sierpinski_rotation_closed(int n, const LabelWeights& w = {});

// Authoritative computation for a family, level and labeling.
GenFunSet compute(Family f, int n, Labeling l);

// All labels of a family in order.
std::vector<std::string> family_labels(Family f);

nlohmann::json to_json(const GenFunSet& g);

}  // namespace selfsim::genfun

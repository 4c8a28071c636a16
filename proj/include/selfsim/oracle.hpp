#pragma once

#include <cstddef>
#include <functional>
#include <string>

#include "selfsim/graph.hpp"
#include "selfsim/poly.hpp"

namespace selfsim::oracle {

using graph::LabeledMultigraph;
using poly::LaurentPoly;

constexpr std::size_t kRankBudget = 24;
constexpr std::size_t kSpinBudget = 20;
constexpr std::size_t kMatchingBudget = 80;

// Generating function of even subgraphs (loops excluded), by Gray-code walk over
// the cycle space. Unweighted uses z; weighted uses one variable per label.
LaurentPoly enumerate_polygons(const LabeledMultigraph& g, bool weighted, std::size_t rank_budget = kRankBudget);

// Edge sets whose odd-degree vertices are exactly {from, to}: the coset of a
// tree path modulo the cycle space.
LaurentPoly enumerate_corner_paths(const LabeledMultigraph& g, std::size_t from, std::size_t to, bool weighted,
                                   std::size_t rank_budget = kRankBudget);
// Corner pair "lr", "lu" or "ru" of a Hanoi or Sierpinski graph.
LaurentPoly enumerate_corner_paths(const LabeledMultigraph& g, const std::string& pair, bool weighted,
                                   std::size_t rank_budget = kRankBudget);

// sum over spins of prod_edges y^(s_u s_v); per-label uses y_<label>.
LaurentPoly spin_sum_partition(const LabeledMultigraph& g, bool per_label, std::size_t vertex_budget = kSpinBudget);

using EdgeWeight = std::function<LaurentPoly(const graph::Edge&)>;
// e-edges weigh z, all other edges 1.
LaurentPoly default_matching_weight(const graph::Edge& e);
LaurentPoly enumerate_perfect_matchings(const LabeledMultigraph& g, const EdgeWeight& weight = default_matching_weight,
                                        std::size_t vertex_budget = kMatchingBudget);

}  // namespace selfsim::oracle

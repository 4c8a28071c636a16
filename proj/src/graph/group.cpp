#include <algorithm>
#include <set>

#include "selfsim/graph.hpp"

namespace selfsim::graph {

std::string family_name(Family f) {
  switch (f) {
    case Family::Grigorchuk: return "grigorchuk";
    case Family::Basilica: return "basilica";
    case Family::Hanoi: return "hanoi";
    case Family::Sierpinski: return "sierpinski";
  }
  return "?";
}

Family parse_family(const std::string& s) {
  if (s == "grigorchuk") return Family::Grigorchuk;
  if (s == "basilica") return Family::Basilica;
  if (s == "hanoi") return Family::Hanoi;
  if (s == "sierpinski") return Family::Sierpinski;
  throw FamilyMismatch("unknown family '" + s + "'");
}

std::string Word::to_string() const {
  std::string s;
  for (auto x : letters) s.push_back(static_cast<char>('0' + x));
  return s;
}

std::uint64_t Word::index() const {
  std::uint64_t r = 0;
  for (auto x : letters) r = r * static_cast<std::uint64_t>(q) + x;
  return r;
}

Word Word::from_index(int q, int n, std::uint64_t index) {
  Word w{q, std::vector<std::uint8_t>(static_cast<std::size_t>(n))};
  for (int i = n - 1; i >= 0; --i) {
    w.letters[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(index % static_cast<std::uint64_t>(q));
    index /= static_cast<std::uint64_t>(q);
  }
  return w;
}

Word Word::parse(int q, const std::string& s) {
  Word w{q, {}};
  for (char c : s) {
    int x = c - '0';
    if (x < 0 || x >= q) throw ConstructionError("letter '" + std::string(1, c) + "' outside alphabet");
    w.letters.push_back(static_cast<std::uint8_t>(x));
  }
  return w;
}

Word Word::constant(int q, int n, int letter) {
  return Word{q, std::vector<std::uint8_t>(static_cast<std::size_t>(n), static_cast<std::uint8_t>(letter))};
}

GroupTable::GroupTable(Family family, int q, std::vector<GeneratorDef> gens)
    : family_(family), q_(q), gens_(std::move(gens)) {
  if (q_ < 2) throw ConstructionError("alphabet size must be at least 2");
  for (const auto& g : gens_) {
    if (g.name.empty() || g.name == "id") throw ConstructionError("invalid generator name");
    if (g.tau.size() != static_cast<std::size_t>(q_) || g.restrictions.size() != static_cast<std::size_t>(q_))
      throw ConstructionError("generator " + g.name + ": wrong arity");
    std::vector<int> sorted = g.tau;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < q_; ++i)
      if (sorted[static_cast<std::size_t>(i)] != i)
        throw ConstructionError("generator " + g.name + ": tau is not a permutation");
  }
  for (const auto& g : gens_) {
    std::vector<int> r;
    for (const auto& name : g.restrictions)
      r.push_back(name == "id" ? -1 : static_cast<int>(generator_index(name)));
    restr_.push_back(std::move(r));
  }
}

std::size_t GroupTable::generator_index(const std::string& name) const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].name == name) return i;
  throw ConstructionError("unknown generator '" + name + "'");
}

Word GroupTable::apply(const std::string& gen, const Word& w) const {
  return apply(generator_index(gen), w);
}

Word GroupTable::apply(std::size_t gen, const Word& w) const {
  if (w.q != q_) throw ConstructionError("word over a different alphabet");
  Word out = w;
  int s = static_cast<int>(gen);
  for (std::size_t i = 0; i < w.letters.size() && s >= 0; ++i) {
    int x = w.letters[i];
    out.letters[i] = static_cast<std::uint8_t>(gens_[static_cast<std::size_t>(s)].tau[static_cast<std::size_t>(x)]);
    s = restr_[static_cast<std::size_t>(s)][static_cast<std::size_t>(x)];
  }
  return out;
}

std::vector<std::uint64_t> GroupTable::permutation(std::size_t gen, int n) const {
  std::uint64_t count = 1;
  for (int i = 0; i < n; ++i) count *= static_cast<std::uint64_t>(q_);
  std::vector<std::uint64_t> perm(count);
  for (std::uint64_t k = 0; k < count; ++k) perm[k] = apply(gen, Word::from_index(q_, n, k)).index();
  return perm;
}

bool GroupTable::is_involution(std::size_t gen) const {
  // States (s1, s2) stand for s1 o s2; -1 is the identity. g o g is trivial
  // iff every reachable state acts trivially on the first letter.
  auto tau = [&](int s, int x) { return s < 0 ? x : gens_[static_cast<std::size_t>(s)].tau[static_cast<std::size_t>(x)]; };
  auto res = [&](int s, int x) { return s < 0 ? -1 : restr_[static_cast<std::size_t>(s)][static_cast<std::size_t>(x)]; };
  std::set<std::pair<int, int>> seen;
  std::vector<std::pair<int, int>> stack{{static_cast<int>(gen), static_cast<int>(gen)}};
  while (!stack.empty()) {
    auto [s1, s2] = stack.back();
    stack.pop_back();
    if (!seen.insert({s1, s2}).second) continue;
    for (int x = 0; x < q_; ++x) {
      int y = tau(s2, x);
      if (tau(s1, y) != x) return false;
      stack.emplace_back(res(s1, y), res(s2, x));
    }
  }
  return true;
}

const GroupTable& grigorchuk_table() {
  static const GroupTable t(Family::Grigorchuk, 2,
                            {{"a", {1, 0}, {"id", "id"}},
                             {"b", {0, 1}, {"a", "c"}},
                             {"c", {0, 1}, {"a", "d"}},
                             {"d", {0, 1}, {"id", "b"}}});
  return t;
}

const GroupTable& basilica_table() {
  static const GroupTable t(Family::Basilica, 2,
                            {{"a", {0, 1}, {"b", "id"}},
                             {"b", {1, 0}, {"a", "id"}}});
  return t;
}

const GroupTable& hanoi_table() {
  static const GroupTable t(Family::Hanoi, 3,
                            {{"a", {1, 0, 2}, {"id", "id", "a"}},
                             {"b", {2, 1, 0}, {"id", "b", "id"}},
                             {"c", {0, 2, 1}, {"c", "id", "id"}}});
  return t;
}

const GroupTable& table_for(Family f) {
  switch (f) {
    case Family::Grigorchuk: return grigorchuk_table();
    case Family::Basilica: return basilica_table();
    case Family::Hanoi:
    case Family::Sierpinski: return hanoi_table();
  }
  throw FamilyMismatch("no group table");
}

}  // namespace selfsim::graph

#include "selfsim/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include "selfsim/errors.hpp"
#include "selfsim/fisher.hpp"
#include "selfsim/genfun.hpp"
#include "selfsim/ising.hpp"
#include "selfsim/oracle.hpp"
#include "selfsim/verify.hpp"

namespace selfsim::cli {

using graph::Family;
namespace bmp = boost::multiprecision;

namespace {

const std::vector<std::string> kFamilies{"grigorchuk", "basilica", "hanoi", "sierpinski"};

struct Options {
  std::string family = "hanoi";
  int level = 1;
  std::string labeling = "plain";
  std::string format;
  std::string beta;
  std::vector<std::string> couplings;
  std::string z;
  std::string y;
  std::string grid;
  std::string tol = "1e-10";
  bool quick = false;
  bool check = false;
  std::size_t budget_rank = oracle::kRankBudget;
  std::size_t budget_vertices = oracle::kSpinBudget;
};

Real parse_real(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    (void)std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return Real(s);
  } catch (const std::exception&) {
    throw DomainError(what + " must be a number, got '" + s + "'");
  }
}

// "a:b:step", inclusive of b.
std::vector<Real> parse_grid(const std::string& g) {
  auto p1 = g.find(':'), p2 = g.rfind(':');
  if (p1 == std::string::npos || p1 == p2) throw DomainError("--grid expects a:b:step");
  const Real a = parse_real(g.substr(0, p1), "grid start"), b = parse_real(g.substr(p1 + 1, p2 - p1 - 1), "grid end");
  const Real step = parse_real(g.substr(p2 + 1), "grid step");
  if (step <= 0 || b < a) throw DomainError("--grid needs a <= b and step > 0");
  std::vector<Real> v;
  const Real slack = step / 1000;
  for (long k = 0;; ++k) {
    Real x = a + step * k;
    if (x > b + slack) break;
    v.push_back(x);
  }
  return v;
}

ising::IsingParams params_from(const Options& o) {
  ising::IsingParams p;
  p.beta = o.beta.empty() ? Real(1) : parse_real(o.beta, "--beta");
  p.couplings.clear();
  for (const auto& c : o.couplings) {
    auto eq = c.find('=');
    if (eq == std::string::npos)
      p.couplings[""] = parse_real(c, "--J");
    else
      p.couplings[c.substr(0, eq)] = parse_real(c.substr(eq + 1), "--J " + c.substr(0, eq));
  }
  if (p.couplings.empty()) p.couplings[""] = Real(1);
  p.validate();
  return p;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

int graph_build(const Options& o, std::ostream& out) {
  const Family f = graph::parse_family(o.family);
  const auto l = genfun::parse_labeling(o.labeling);
  graph::LabeledMultigraph g;
  if (l == genfun::Labeling::Rotation) {
    if (f != Family::Sierpinski) throw FamilyMismatch("--labeling rotation needs --family sierpinski");
    g = graph::rotation_invariant_fixture(o.level);
  } else {
    g = graph::build_family_graph(f, o.level);
  }
  if (o.format == "dot")
    out << graph::to_dot(g);
  else if (o.format.empty() || o.format == "json")
    out << dump(graph::to_json(g));
  else
    throw DomainError("graph build supports --format json or dot");
  return kOk;
}

int genfun_compute(const Options& o, std::ostream& out) {
  if (!o.format.empty() && o.format != "json") throw DomainError("genfun compute supports --format json");
  auto g = genfun::compute(graph::parse_family(o.family), o.level, genfun::parse_labeling(o.labeling));
  out << dump(genfun::to_json(g));
  return kOk;
}

int ising_partition(const Options& o, std::ostream& out) {
  const Family f = graph::parse_family(o.family);
  auto p = params_from(o);
  const bool per = p.per_label();
  auto z = ising::partition_polynomial(f, o.level, per);
  nlohmann::json j{{"family", o.family}, {"level", o.level}, {"Z", poly::to_json(z)}, {"Z-string", z.to_string()}};
  if (!o.beta.empty()) j["value"] = to_sci(ising::partition_value(f, o.level, p));
  int code = kOk;
  if (o.check) {
    auto g = graph::build_family_graph(f, o.level);
    const bool same = oracle::spin_sum_partition(g, per, o.budget_vertices) == z;
    j["spin-sum-check"] = same ? "OK" : "MISMATCH";
    if (!same) code = kVerificationFailed;
  }
  out << dump(j);
  return code;
}

Real z_from(const Options& o) {
  if (!o.z.empty()) return parse_real(o.z, "--z");
  auto p = params_from(o);
  if (p.per_label()) throw DomainError("ising limit takes a single coupling");
  return bmp::tanh(p.beta * p.coupling(""));
}

int ising_limit(const Options& o, std::ostream& out, bool level_given) {
  const Family f = graph::parse_family(o.family);
  const Real z = z_from(o);
  auto s = ising::thermodynamic_limit(f, z, parse_real(o.tol, "--tol"));
  nlohmann::json j{{"family", o.family},      {"z", to_sci(z)},          {"value", to_sci(s.value)},
                   {"exact", s.exact},        {"terms", s.truncation},   {"tail-bound", to_sci(s.bound)},
                   {"constant", to_sci(s.constant)}};
  if (level_given) j["density"] = to_sci(ising::free_energy_density(f, o.level, z));
  out << dump(j);
  return kOk;
}

int ising_renorm(const Options& o, std::ostream& out, bool level_given) {
  const auto v = ising::parse_variant(o.family);
  std::vector<Real> ys;
  if (!o.grid.empty())
    ys = parse_grid(o.grid);
  else if (!o.y.empty())
    ys = {parse_real(o.y, "--y")};
  else
    throw DomainError("ising renorm needs --y or --grid");
  out << (level_given ? "y,f,c,lhs,rhs,relative_error\n" : "y,f,c\n");
  for (const auto& y : ys) {
    auto st = ising::renormalization_step(v, y);
    out << to_sci(y) << ',' << to_sci(st.f) << ',' << to_sci(st.c);
    if (level_given) {
      const Real lhs = ising::renorm_partition(v, o.level + 1, y);
      const Real rhs = ising::renorm_partition(v, o.level, st.f) * bmp::pow(st.c, bmp::pow(Real(3), o.level - 1));
      out << ',' << to_sci(lhs) << ',' << to_sci(rhs) << ',' << to_sci(bmp::abs(lhs - rhs) / bmp::abs(lhs));
    }
    out << '\n';
  }
  return kOk;
}

int stats_labels(const Options& o, std::ostream& out) {
  auto l = o.labeling == "plain" ? genfun::Labeling::Labels : genfun::parse_labeling(o.labeling);
  auto t = ising::label_statistics(graph::parse_family(o.family), o.level, l);
  if (o.format.empty() || o.format == "csv") {
    out << ising::to_csv(t);
    return kOk;
  }
  if (o.format != "json") throw DomainError("stats labels supports --format csv or json");
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : t.rows) {
    nlohmann::json row{{"label", r.label},
                       {"mean", poly::mpq_to_string(r.stats.mean)},
                       {"variance", poly::mpq_to_string(r.stats.variance)},
                       {"kappa3", poly::mpq_to_string(r.stats.kappa3)},
                       {"kappa4", poly::mpq_to_string(r.stats.kappa4)}};
    if (r.stats.variance != 0) {
      row["skewness"] = to_sci(r.stats.skewness());
      row["excess-kurtosis"] = poly::mpq_to_string(r.stats.excess_kurtosis());
    }
    rows.push_back(row);
  }
  out << dump({{"family", o.family}, {"level", o.level}, {"labeling", genfun::labeling_name(l)}, {"rows", rows}});
  return kOk;
}

int fisher_transform(const Options& o, std::ostream& out) {
  auto r = fisher::fisher_transform(graph::build_family_graph(Family::Sierpinski, o.level));
  if (o.format == "dot")
    out << graph::to_dot(r.graph);
  else if (o.format.empty() || o.format == "json")
    out << dump(graph::to_json(r.graph));
  else
    throw DomainError("fisher transform supports --format json or dot");
  return kOk;
}

int verify_oracle(const Options& o, std::ostream& out) {
  auto r = verify::verify_oracle(graph::parse_family(o.family), o.level, o.budget_rank);
  out << r.message << '\n';
  return r.ok ? kOk : kVerificationFailed;
}

int verify_all(const Options& o, std::ostream& out) {
  bool ok = true;
  for (int id = 1; id <= verify::kCriterionCount; ++id) {
    if (o.quick && !verify::is_quick(id)) continue;
    auto r = verify::run_criterion(id);
    out << verify::format(r) << std::flush;
    ok = ok && r.pass;
  }
  return ok ? kOk : kVerificationFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Ising computations on self-similar Schreier graphs", "selfsim"};
  app.require_subcommand(1);
  Options o;

  auto family = [&](CLI::App* c) { c->add_option("--family", o.family)->check(CLI::IsMember(kFamilies)); };
  auto level = [&](CLI::App* c) { return c->add_option("--level", o.level)->check(CLI::Range(1, 64)); };
  auto labeling = [&](CLI::App* c) {
    c->add_option("--labeling", o.labeling)->check(CLI::IsMember({"plain", "labels", "rotation"}));
  };
  auto couplings = [&](CLI::App* c) {
    c->add_option("--beta", o.beta, "inverse temperature");
    c->add_option("--J", o.couplings, "coupling F, or label=F (repeatable)");
  };

  auto* graph_cmd = app.add_subcommand("graph", "Schreier and Sierpinski graphs")->require_subcommand(1);
  auto* build = graph_cmd->add_subcommand("build", "build a graph and print JSON or DOT");
  family(build), level(build), labeling(build);
  build->add_option("--format", o.format)->check(CLI::IsMember({"json", "dot"}));

  auto* genfun_cmd = app.add_subcommand("genfun", "generating functions")->require_subcommand(1);
  auto* compute = genfun_cmd->add_subcommand("compute", "closed-polygon generating function as JSON");
  family(compute), level(compute), labeling(compute);
  compute->add_option("--format", o.format)->check(CLI::IsMember({"json"}));

  auto* ising_cmd = app.add_subcommand("ising", "partition functions")->require_subcommand(1);
  auto* partition = ising_cmd->add_subcommand("partition", "exact Z in y = exp(beta J)");
  family(partition), level(partition), couplings(partition);
  partition->add_flag("--check", o.check, "compare with the direct spin sum");
  partition->add_option("--budget-vertices", o.budget_vertices);
  auto* limit = ising_cmd->add_subcommand("limit", "thermodynamic limit");
  family(limit), couplings(limit);
  auto* limit_level = level(limit);
  limit->add_option("--z", o.z, "tanh(beta J)");
  limit->add_option("--tol", o.tol);
  auto* renorm = ising_cmd->add_subcommand("renorm", "renormalization map f, c (CSV)");
  renorm->add_option("--family", o.family)->check(CLI::IsMember({"hanoi", "sierpinski"}));
  auto* renorm_level = level(renorm);
  renorm->add_option("--y", o.y);
  renorm->add_option("--grid", o.grid, "a:b:step");

  auto* stats_cmd = app.add_subcommand("stats", "label statistics")->require_subcommand(1);
  auto* labels = stats_cmd->add_subcommand("labels", "cumulants of label counts");
  family(labels), level(labels), labeling(labels);
  labels->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));

  auto* fisher_cmd = app.add_subcommand("fisher", "Fisher construction")->require_subcommand(1);
  auto* transform = fisher_cmd->add_subcommand("transform", "Fisher graph of the Sierpinski graph of a level");
  level(transform);
  transform->add_option("--format", o.format)->check(CLI::IsMember({"json", "dot"}));

  auto* verify_cmd = app.add_subcommand("verify", "verification")->require_subcommand(1);
  auto* oracle_cmd = verify_cmd->add_subcommand("oracle", "enumeration against the generating function");
  family(oracle_cmd), level(oracle_cmd);
  oracle_cmd->add_option("--budget-rank", o.budget_rank);
  auto* all = verify_cmd->add_subcommand("all", "every acceptance criterion");
  all->add_flag("--quick", o.quick, "only the quick criteria");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (build->parsed()) return graph_build(o, out);
    if (compute->parsed()) return genfun_compute(o, out);
    if (partition->parsed()) return ising_partition(o, out);
    if (limit->parsed()) return ising_limit(o, out, limit_level->count() > 0);
    if (renorm->parsed()) return ising_renorm(o, out, renorm_level->count() > 0);
    if (labels->parsed()) return stats_labels(o, out);
    if (transform->parsed()) return fisher_transform(o, out);
    if (oracle_cmd->parsed()) return verify_oracle(o, out);
    if (all->parsed()) return verify_all(o, out);
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace selfsim::cli

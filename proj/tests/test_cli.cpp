#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "selfsim/cli.hpp"

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "selfsim");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = selfsim::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("cli: genfun compute") {
  auto r = run({"genfun", "compute", "--family", "grigorchuk", "--level", "4"});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["gamma-at-1"] == "128");
  CHECK(j["gamma-degree"] == 14);
  CHECK(j["gamma"]["terms"].size() == 8);
}

TEST_CASE("cli: verify oracle") {
  auto r = run({"verify", "oracle", "--family", "hanoi", "--level", "2"});
  CHECK(r.code == 0);
  CHECK(r.out == "OK: 16 polygons, genfun == enumeration\n");
  auto b = run({"verify", "oracle", "--family", "hanoi", "--level", "4"});
  CHECK(b.code == 3);
  CHECK(b.err.find("required 40") != std::string::npos);
  CHECK(run({"verify", "oracle", "--family", "hanoi", "--level", "3", "--budget-rank", "4"}).code == 3);
}

TEST_CASE("cli: graph build dot") {
  auto r = run({"graph", "build", "--family", "hanoi", "--level", "1", "--format", "dot"});
  CHECK(r.code == 0);
  for (const char* l : {"label=\"a\"", "label=\"b\"", "label=\"c\""}) CHECK(r.out.find(l) != std::string::npos);
  std::size_t loops = 0;
  for (auto p = r.out.find("loop=true"); p != std::string::npos; p = r.out.find("loop=true", p + 1)) ++loops;
  CHECK(loops == 3);
  CHECK(run({"graph", "build", "--family", "hanoi", "--level", "1", "--format", "dot"}).out == r.out);
}

TEST_CASE("cli: usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"graph", "build", "--family", "nope"}).code == 2);
  CHECK(run({"genfun", "compute", "--family", "hanoi", "--labeling", "rotation"}).code == 2);
  CHECK(run({"ising", "renorm", "--family", "hanoi"}).code == 2);
  CHECK(run({"ising", "limit", "--family", "hanoi", "--z", "1"}).code == 2);
  CHECK(run({"ising", "limit", "--family", "hanoi", "--z", "abc"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("cli: ising subcommands") {
  auto p = run({"ising", "partition", "--family", "hanoi", "--level", "1", "--check"});
  CHECK(p.code == 0);
  auto j = nlohmann::json::parse(p.out);
  CHECK(j["Z-string"] == "6*y^-1 + 2*y^3");
  CHECK(j["spin-sum-check"] == "OK");
  auto per = run({"ising", "partition", "--family", "hanoi", "--level", "1", "--beta", "0.5", "--J", "1", "--J",
                  "a=2"});
  CHECK(per.code == 0);
  CHECK(nlohmann::json::parse(per.out)["Z"]["vars"] == nlohmann::json{"y_a", "y_b", "y_c"});
  auto big = run({"ising", "partition", "--family", "hanoi", "--level", "3", "--check"});
  CHECK(big.code == 3);

  auto l = run({"ising", "limit", "--family", "grigorchuk", "--z", "0"});
  CHECK(l.code == 0);
  CHECK(nlohmann::json::parse(l.out)["value"] == "6.93147180559945309417e-01");

  auto rn = run({"ising", "renorm", "--family", "sierpinski", "--grid", "1:2:0.5", "--level", "2"});
  CHECK(rn.code == 0);
  CHECK(rn.out.rfind("y,f,c,lhs,rhs,relative_error\n1.00000000000000000000e+00,1.00000000000000000000e+00,"
                     "8.00000000000000000000e+00,",
                     0) == 0);
  CHECK(std::count(rn.out.begin(), rn.out.end(), '\n') == 4);
}

TEST_CASE("cli: stats and fisher") {
  auto s = run({"stats", "labels", "--family", "hanoi", "--level", "3"});
  CHECK(s.code == 0);
  CHECK(s.out.find("hanoi,3,labels,a,13/2,13/4,") != std::string::npos);
  auto f = run({"fisher", "transform", "--level", "1"});
  CHECK(f.code == 0);
  auto j = nlohmann::json::parse(f.out);
  CHECK(j["vertices"].size() == 6);
  std::size_t e = 0;
  for (const auto& edge : j["edges"]) e += edge["kind"] == "e";
  CHECK(e == 3);
}

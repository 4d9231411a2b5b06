#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "qchar/closedforms.hpp"

using namespace qchar;

namespace {

struct Run {
  int rc;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " " + QCHAR_CLI_PATH + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

int lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("qchar subcommand") {
  auto r = run("qchar 'Y[-1]*Y[-3]' --format json");
  CHECK(r.rc == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema"] == 1);
  CHECK(j["series"]["terms"].size() == 4);

  auto one = run("qchar 'Psi[0]^-1' --degcap 0");
  CHECK(one.rc == 0);
  CHECK(one.out == "top Psi[0]^-1\n1\t1\n");

  CHECK(run("qchar 'Psi[0]^1'").rc == 2);
  CHECK(run("qchar 'Y[-1'").rc == 2);
}

TEST_CASE("usage errors") {
  CHECK(run("").rc == 2);
  CHECK(run("frobnicate").rc == 2);
  CHECK(run("qchar 'Psi[0]^-1' --window 3").rc == 2);
  CHECK(run("qchar 'Psi[0]^-1' --window 1:0").rc == 2);
  CHECK(run("qchar 'Psi[0]^-1' --q 1,2").rc == 2);
  CHECK(run("qchar 'Psi[0]^-1' --format yaml").rc == 2);
  CHECK(run("verify nothing").rc == 2);
}

TEST_CASE("verify targets") {
  auto dec = run("verify decomp --window -8:0 --degcap 4 --format json");
  CHECK(dec.rc == 0);
  auto j = nlohmann::json::parse(dec.out);
  CHECK(j["pass"] == true);
  for (auto& c : j["checks"]) CHECK(c["anchor"].get<std::string>().size() > 0);

  CHECK(run("verify oracle --D 4").rc == 0);
  auto div = run("verify divergence --N 3");
  CHECK(div.rc == 0);
  CHECK(div.out.find("[\"q^-1\",\"q^-3\",\"q^-5\",\"q^-7\"]") != std::string::npos);

  CHECK(run("verify multiplicativity --depth 4 --count 10").rc == 0);
  CHECK(run("verify triangularity --window -6:0 --depth 2").rc == 0);
  CHECK(run("verify induced --window -6:0 --depth 1 --D 4 --rmax 1").rc == 0);
  CHECK(run("verify stability --window -4:0 --depth 1").rc == 0);
}

TEST_CASE("simulate subcommand") {
  auto one = run("simulate 'V[1,-1]'");
  CHECK(one.rc == 0);
  CHECK(lines(one.out) == 2);
  CHECK(run("simulate ''").rc == 2);
  CHECK(run("simulate 'V[1,-1] *'").rc == 2);

  // three 2-dim factors against the subset expansion of the standard q-character
  auto three = run("simulate 'V[1,-1]*V[1,-3]*V[1,-5]' --normalized --format json");
  CHECK(three.rc == 0);
  auto j = nlohmann::json::parse(three.out);
  REQUIRE(j["rows"].size() == 8);
  LWeight top = normalize(y_of(-1) * y_of(-3) * y_of(-5));
  Region reg{{-8, 0}, 3};
  QCharSeries got(reg);
  for (auto& row : j["rows"]) {
    auto e = a_inverse_exponents(parse_lweight(row["lweight"].get<std::string>()), top);
    REQUIRE(e.has_value());
    got.add(AMonomial::from_map(*e), row["multiplicity"].get<long long>());
  }
  CHECK(got == standard_qchar({-1, -3, -5}, reg));

  auto spec = run("simulate 'V[1,-1]*V[1,-3]*V[1,-5]' --normalized --q 2,5/3 --format json");
  CHECK(spec.rc == 0);
  CHECK(nlohmann::json::parse(spec.out)["rows"] == j["rows"]);
}

TEST_CASE("limit, decompose and induce") {
  auto lim = run("limit --window -6:0 --degcap 3 --format json");
  CHECK(lim.rc == 0);
  auto j = nlohmann::json::parse(lim.out);
  CHECK(j["n_stable"] == 4);
  CHECK(j["matches_closed_form"] == true);

  CHECK(run("decompose --window -6:0 --degcap 3").rc == 0);

  auto ind = run("induce 3 1");
  CHECK(ind.rc == 0);
  CHECK(ind.out == "(q^-2) x[1] x[3] + (-1 + q^-2) x[2] x[2]\n");
  CHECK(run("induce 1 --hr 1 --J 0").rc == 0);
}

TEST_CASE("environment overrides and determinism") {
  CHECK(run("qchar 'Psi[0]^-1'", "QCHAR_DEGCAP=0").out == "top Psi[0]^-1\n1\t1\n");
  // flags win over the environment
  CHECK(lines(run("qchar 'Psi[0]^-1' --degcap 1", "QCHAR_DEGCAP=0").out) > 2);
  CHECK(run("qchar 'Psi[0]^-1'", "QCHAR_FORMAT=json").out.front() == '{');
  CHECK(run("qchar 'Psi[0]^-1'", "QCHAR_WINDOW=bad").rc == 2);

  std::string args = "verify multiplicativity --depth 3 --count 5 --seed 7 --format json";
  CHECK(run(args).out == run(args).out);
  std::string args2 = "qchar 'Psi[0]^-1*Y[-3]' --window -10:0 --degcap 4 --format json";
  CHECK(run(args2).out == run(args2).out);
}

// SPDX-License-Identifier: MIT
//
// Runs the hml binary and checks exit codes and output.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct Run {
  int code;
  std::string out;
};

Run hml(const std::string& args) {
  std::string cmd = std::string(HML_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string temp_file(const std::string& name, const std::string& text) {
  std::string path = std::string(HML_TEST_TMP) + "/" + name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("char reports the witness") {
  Run r = hml("char --fragment S --alphabet a,b '<a>tt'");
  CHECK(r.code == 0);
  CHECK(r.out.find("witness: a.0") != std::string::npos);
  CHECK(hml("char --fragment S --alphabet a,b '<a>tt | <b>tt'").code == 1);
}

TEST_CASE("metrics") {
  Run r = hml("metrics '<a>(<a>tt & <b>tt) & <b>(<a>tt & <b>tt)'");
  CHECK(r.code == 0);
  CHECK(r.out == "size 13\ndecl 2\neqlen 5\ndepth 2\n");
}

TEST_CASE("preorder on files") {
  std::string p = temp_file("p.proc", "a.b.0 + c.0\n");
  std::string q = temp_file("q.proc", "states 3\nroot 0\n0 a 1\n1 b 2\n");
  CHECK(hml("preorder --kind TS " + p + " " + q).code == 1);
  CHECK(hml("preorder --kind S " + q + " " + p).code == 0);
  CHECK(hml("kernel --kind BS " + q + " 'a.b.0'").code == 0);
}

TEST_CASE("json output") {
  Run r = hml("prime --json --fragment RS --alphabet a,b '<a>0 & [b]ff'");
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["query"] == "prime");
  CHECK(j["verdict"] == true);
  CHECK(j["witness"] == "a.0");
  CHECK(j["confidence"] == "exact");
  CHECK(j["inputs"]["formula"] == "<a>0 & [b]ff");

  r = hml("prime --json --fragment 2S --alphabet a,b '<a>tt'");
  j = nlohmann::json::parse(r.out);
  CHECK(j["confidence"] == "bounded-evidence");
}

TEST_CASE("exit codes for errors") {
  CHECK(hml("").code == 2);
  CHECK(hml("sat --fragment S '<a>tt &'").code == 2);
  CHECK(hml("sat --fragment S '[a]ff'").code == 2);
  CHECK(hml("sat --fragment S '<a>0'").code == 2);  // 0 needs an alphabet
  CHECK(hml("sat --fragment QQ '<a>tt'").code == 2);
  CHECK(hml("dnf --limit 1 '<a>tt | <b>tt'").code == 3);
}

TEST_CASE("satisfiability and validity") {
  CHECK(hml("sat --fragment RS '<a>tt & [a]ff'").code == 1);
  Run r = hml("sat --fragment CS --alphabet a,b '<a>0'");
  CHECK(r.code == 0);
  CHECK(r.out.find("witness: a.0") != std::string::npos);
  CHECK(hml("valid --fragment RS '<a>tt | [a]ff'").code == 0);
  CHECK(hml("valid '<a>tt'").code == 1);
}

TEST_CASE("model checking with equation files") {
  std::string eq = temp_file("phi.eq", "root X\nX = <a>Y & <b>Y\nY = <a>tt & <b>tt\n");
  CHECK(hml("mc 'a.(a.0+b.0)+b.(a.0+b.0)' " + eq).code == 0);
  CHECK(hml("mc 'a.0' " + eq).code == 1);
}

TEST_CASE("synthesis") {
  Run r = hml("synth --kind RS --alphabet a,b --form explicit 'a.0'");
  CHECK(r.code == 0);
  CHECK(r.out == "<a>0 & [b]ff\n");
  r = hml("synth --kind S 'a.(a.0+b.0)+b.(a.0+b.0)'");
  CHECK(r.code == 0);
  CHECK(r.out.find("root X_0") != std::string::npos);
  CHECK(hml("synth --kind S --form other 'a.0'").code == 2);
}

TEST_CASE("dot output") {
  std::string path = std::string(HML_TEST_TMP) + "/g.dot";
  CHECK(hml("prime --fragment S --dot " + path + " '<a>tt | <a><b>tt'").code == 0);
  std::ifstream in(path);
  std::string first;
  std::getline(in, first);
  CHECK(first == "digraph G {");
}

TEST_CASE("generators are reproducible") {
  Run a = hml("gen formulas --fragment RS --alphabet a,b --seed 5 --count 5");
  Run b = hml("gen formulas --fragment RS --alphabet a,b --seed 5 --count 5");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(hml("oracle enum --alphabet a,b --depth-budget 1 --json").out.find("\"verdict\": 4") != std::string::npos);
}

TEST_CASE("kernel-modulo check") {
  Run r = hml("char --modulo-kernel --fragment CS --alphabet a,b '0'");
  CHECK(r.code == 0);
  CHECK(r.out.find("witness: 0") != std::string::npos);
  CHECK(hml("char --modulo-kernel --fragment S --alphabet a,b '<a>tt'").code == 1);
}

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome run(const std::string& args) {
  const std::string cmd = std::string("\"") + IMCF_BINARY + "\" " + args + " 2>&1";
  Outcome o;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe)) o.out += buf;
  const int status = pclose(pipe);
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return o;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "imcf_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Numeric rows of a CSV, skipping '#' comments and the header line.
std::vector<std::vector<double>> rows_of(const fs::path& p, std::vector<std::string>* comments = nullptr) {
  std::ifstream in(p);
  std::vector<std::vector<double>> rows;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.rfind('#', 0) == 0) {
      if (comments) comments->push_back(line);
      continue;
    }
    if (header) {
      header = false;
      continue;
    }
    std::vector<double> row;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

double value_after(const std::string& text, const std::string& label) {
  const auto at = text.find(label);
  REQUIRE(at != std::string::npos);
  return std::stod(text.substr(at + label.size()));
}

}  // namespace

TEST_CASE("kottler subcommand") {
  auto flat = run("kottler --n 3 --epsilon 0 --mass 4");
  CHECK(flat.code == 0);
  CHECK(value_after(flat.out, "horizon radius") == doctest::Approx(2.0).epsilon(1e-12));
  auto hyp = run("kottler --n 3 --epsilon -1 --mass 3");
  CHECK(hyp.code == 0);
  CHECK(value_after(hyp.out, "horizon radius") == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(value_after(hyp.out, "boundary mass") == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(run("kottler --n 3 --epsilon -1 --mass 0").code == 2);
  CHECK(run("kottler --n 3 --epsilon 2 --mass 1").code == 2);
  CHECK(run("kottler --bogus").code == 2);
  CHECK(run("").code == 2);
}

TEST_CASE("embed and mass subcommands") {
  const auto zero = scratch("zero.csv");
  REQUIRE(run("embed --n 3 --epsilon 0 --mass 0 --r-max 5 --step 0.1 --out \"" + zero.string() + "\"").code == 0);
  std::vector<std::string> comments;
  const auto rows = rows_of(zero, &comments);
  REQUIRE(rows.size() > 10);
  CHECK_FALSE(comments.empty());
  for (const auto& r : rows) CHECK(r[1] == 0.0);

  const auto profile = scratch("kottler.csv");
  REQUIRE(run("embed --n 3 --epsilon -1 --mass 3 --out \"" + profile.string() + "\"").code == 0);
  const auto m = run("mass --n 3 --epsilon -1 --genus 2 --profile \"" + profile.string() + "\"");
  CHECK(m.code == 0);
  CHECK(std::abs(value_after(m.out, "total") - 3.0) < 1e-3);

  const auto direct = run("mass --n 3 --epsilon 0 --mass 4");
  CHECK(direct.code == 0);
  CHECK(std::abs(value_after(direct.out, "total") - 4.0) < 1e-6);

  CHECK(run("mass --n 3 --epsilon -1 --profile /nonexistent/profile.csv").code == 2);
  CHECK(run("embed --n 3 --epsilon 0 --mass -1 --out \"" + zero.string() + "\"").code == 2);
}

TEST_CASE("flow subcommand on a slice") {
  const auto cfg = scratch("slice.ini");
  const auto trace = scratch("slice.csv");
  write(cfg, "[ambient]\nn = 3\nepsilon = -1\ngenus = 2\n[initial]\nmode = symmetric\ns0 = 2.010105077484762\n"
             "[solver]\nt_end = 2\nrecord_dt = 0.1\n[output]\ntrace = " + trace.string() + "\n");
  const auto res = run("flow \"" + cfg.string() + "\"");
  CHECK(res.code == 0);
  std::vector<std::string> comments;
  const auto rows = rows_of(trace, &comments);
  REQUIRE(rows.size() == 21);
  for (const auto& r : rows) CHECK(std::abs(r[1] * std::exp(-r[0]) / rows.front()[1] - 1.0) < 1e-8);
  bool has_resolved = false;
  for (const auto& c : comments) has_resolved |= c.find("genus = 2") != std::string::npos;
  CHECK(has_resolved);

  const auto first = slurp(trace);
  REQUIRE(run("flow \"" + cfg.string() + "\"").code == 0);
  CHECK(slurp(trace) == first);
}

TEST_CASE("flow subcommand failures") {
  const auto bad = scratch("bad.ini");
  write(bad, "[ambient]\nn = 3\n\n[initial]\nwobble = 1\n");
  const auto res = run("flow \"" + bad.string() + "\"");
  CHECK(res.code == 2);
  CHECK(res.out.find("line 5") != std::string::npos);
  CHECK(run("flow /nonexistent/run.ini").code == 2);

  const auto rough = scratch("rough.ini");
  write(rough, "[ambient]\nn = 3\n[initial]\nM = 16\ns0 = 0\nmode 3 0 3.0 0.0\n[output]\ntrace = " +
                   scratch("rough.csv").string() + "\n");
  const auto nm = run("flow \"" + rough.string() + "\"");
  CHECK(nm.code == 3);
  CHECK(nm.out.find("t=") != std::string::npos);
}

TEST_CASE("verify subcommand") {
  CHECK(run("verify --suite slices --quiet").code == 0);
  CHECK(run("verify --suite mass --quiet").code == 0);
  CHECK(run("verify --suite nothing").code == 2);
}

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "dgcn/dgcn.h"

namespace fs = std::filesystem;

namespace {

struct Config {
  dgcn_config* ptr = nullptr;
  Config() { REQUIRE(dgcn_config_new(&ptr) == DGCN_OK); }
  ~Config() { dgcn_config_free(ptr); }
};

struct Network {
  dgcn_network* ptr = nullptr;
  ~Network() { dgcn_network_free(ptr); }
};

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / "dgcn_capi_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct Log {
  std::vector<std::string> lines;
};

void collect(uint32_t round, uint32_t node, const char* cause, void* user) {
  static_cast<Log*>(user)->lines.push_back(std::to_string(round) + " " + std::to_string(node) + " " + cause);
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::strlen(dgcn_version()) > 0);
  CHECK(std::string(dgcn_status_name(DGCN_ERR_CONFIG)) == "configuration error");
  CHECK(std::string(dgcn_status_name(static_cast<dgcn_status>(99))) == "unknown status");
}

TEST_CASE("config handle") {
  Config c;
  CHECK(dgcn_config_set(c.ptr, "cascade.tau", "0.4") == DGCN_OK);
  CHECK(dgcn_config_set(c.ptr, "cascade.bogus", "1") == DGCN_ERR_CONFIG);
  CHECK(std::string(dgcn_last_error()).find("cascade.bogus") != std::string::npos);
  CHECK(dgcn_config_validate(c.ptr) == DGCN_OK);
  CHECK(dgcn_config_set(c.ptr, "generator.group_size", "101") == DGCN_OK);
  CHECK(dgcn_config_validate(c.ptr) == DGCN_ERR_CONFIG);
  CHECK(dgcn_config_set(nullptr, "cascade.tau", "1") == DGCN_ERR_INVALID_ARGUMENT);
  CHECK(dgcn_config_new(nullptr) == DGCN_ERR_INVALID_ARGUMENT);

  const auto path = scratch("a.conf");
  std::ofstream(path) << "cascade.tau = 0.6\nexperiment.repetitions = 2\n";
  dgcn_config* loaded = nullptr;
  CHECK(dgcn_config_load(path.c_str(), &loaded) == DGCN_OK);
  CHECK(loaded != nullptr);
  dgcn_config_free(loaded);
  std::ofstream(path) << "nonsense\n";
  loaded = nullptr;
  CHECK(dgcn_config_load(path.c_str(), &loaded) == DGCN_ERR_CONFIG);
  CHECK(loaded == nullptr);
  dgcn_config_free(nullptr);
}

TEST_CASE("generate, save, load, attack") {
  Config c;
  Network net;
  REQUIRE(dgcn_network_generate(c.ptr, 5, &net.ptr) == DGCN_OK);
  uint32_t nf = 0, np = 0, gs = 0;
  CHECK(dgcn_network_counts(net.ptr, &nf, &np, &gs) == DGCN_OK);
  CHECK(nf == 150);
  CHECK(np == 100);
  CHECK(gs == 5);
  int64_t links = 0;
  CHECK(dgcn_network_links(net.ptr, c.ptr, &links) == DGCN_OK);
  CHECK(links > 0);

  const auto path = scratch("net.txt");
  CHECK(dgcn_network_save(net.ptr, path.c_str()) == DGCN_OK);
  CHECK(slurp(path).starts_with("150 100 5\n"));
  Network loaded;
  REQUIRE(dgcn_network_load(path.c_str(), &loaded.ptr) == DGCN_OK);
  int64_t links2 = 0;
  CHECK(dgcn_network_links(loaded.ptr, c.ptr, &links2) == DGCN_OK);
  CHECK(links2 == links);

  dgcn_row a{}, b{}, r{};
  Log log;
  CHECK(dgcn_network_attack(net.ptr, c.ptr, "IDA", 0.2, 5, collect, &log, &a) == DGCN_OK);
  CHECK(dgcn_network_attack(loaded.ptr, c.ptr, "IDA", 0.2, 5, nullptr, nullptr, &b) == DGCN_OK);
  CHECK(dgcn_run(c.ptr, "IDA", 0.2, 5, nullptr, nullptr, &r) == DGCN_OK);
  CHECK(a.r == b.r);
  CHECK(a.r == r.r);
  CHECK(std::string(a.mode) == "IDA");
  CHECK(std::string(r.family) == "ER");
  CHECK(a.failed_nodes == log.lines.size());
  CHECK(a.failed_nodes >= 25);
  CHECK(log.lines[0].starts_with("0 "));
  CHECK(log.lines[0].ends_with(" attack"));

  CHECK(dgcn_network_attack(net.ptr, c.ptr, "ABC", 0.2, 5, nullptr, nullptr, &a) == DGCN_ERR_INVALID_ARGUMENT);
  CHECK(dgcn_network_attack(net.ptr, c.ptr, "IDA", 1.5, 5, nullptr, nullptr, &a) == DGCN_ERR_CONFIG);
  CHECK(dgcn_network_attack(nullptr, c.ptr, "IDA", 0.2, 5, nullptr, nullptr, &a) == DGCN_ERR_INVALID_ARGUMENT);
}

TEST_CASE("network load errors") {
  Network net;
  CHECK(dgcn_network_load(scratch("missing.txt").c_str(), &net.ptr) == DGCN_ERR_IO);
  const auto bad = scratch("bad.txt");
  std::ofstream(bad) << "1 1 1\n0 O\n";
  CHECK(dgcn_network_load(bad.c_str(), &net.ptr) == DGCN_ERR_FORMAT);
  std::ofstream(bad) << "2 1 1\n0 O\n1 O\n2 C\n0 1\n0 -> 2\n1 -> 2\n";
  CHECK(dgcn_network_load(bad.c_str(), &net.ptr) == DGCN_ERR_STRUCTURE);
  CHECK(net.ptr == nullptr);
}

TEST_CASE("row formatting") {
  Config c;
  dgcn_row row{};
  REQUIRE(dgcn_run(c.ptr, "RSPA", 0.0, 3, nullptr, nullptr, &row) == DGCN_OK);
  char small[8];
  const size_t need = dgcn_row_format(&row, small, sizeof small);
  CHECK(need > sizeof small);
  CHECK(std::strlen(small) == sizeof small - 1);
  std::string full(need + 1, '\0');
  CHECK(dgcn_row_format(&row, full.data(), full.size()) == need);
  full.resize(need);
  CHECK(full == "ER,RSPA,none,,0,0,3,1,1,1,0");
  CHECK(std::string(dgcn_result_header()).starts_with("family,mode,"));
}

TEST_CASE("sweep and report") {
  Config c;
  dgcn_config_set(c.ptr, "experiment.repetitions", "2");
  dgcn_config_set(c.ptr, "experiment.sweep_param", "tau");
  dgcn_config_set(c.ptr, "experiment.sweep_values", "0.2:0.2:1.0");
  const auto csv = scratch("s.csv"), summary = scratch("s.summary.csv"), table = scratch("t.csv"),
             svg = scratch("t.svg");
  size_t rows = 0;
  REQUIRE(dgcn_sweep(c.ptr, 2, csv.c_str(), summary.c_str(), &rows) == DGCN_OK);
  CHECK(rows == 2 * 5 * 9);
  size_t series = 0;
  REQUIRE(dgcn_report(csv.c_str(), table.c_str(), svg.c_str(), &series) == DGCN_OK);
  CHECK(series == 5);
  CHECK(slurp(svg).find("<svg") != std::string::npos);
  CHECK(dgcn_report(scratch("nothing.csv").c_str(), table.c_str(), nullptr, &series) == DGCN_ERR_IO);
  std::ofstream(scratch("junk.csv")) << "a,b\n";
  CHECK(dgcn_report(scratch("junk.csv").c_str(), table.c_str(), nullptr, &series) == DGCN_ERR_FORMAT);
  CHECK(dgcn_sweep(c.ptr, 1, "/nonexistent-dir/x.csv", nullptr, &rows) == DGCN_ERR_IO);
}

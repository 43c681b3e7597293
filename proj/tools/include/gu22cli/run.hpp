#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gu22/arith.hpp"
#include "gu22/finitegeom.hpp"

namespace gu22::cli {

constexpr int kSchemaVersion = 1;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { Json, Csv };

struct RunConfig {
  long p = 3;
  int k_max = 2;
  int precision = 8;
  Uniformizer uniformizer = Uniformizer::P;
  long double ceiling = 1e6;
  int threads = 1;
  unsigned long seed = 1;
  std::string out;  // empty: stdout
  Format format = Format::Json;
  // links
  std::string link_case = "neutral";
  int link_type = -1;  // -1: 5 (neutral) or 0 (non-neutral)
  // local-model: "fp", "fp2" or "both"
  std::string rings = "both";
  bool timings = false;
  // Run only checks whose id equals an entry or starts with "entry."; empty runs all.
  std::vector<std::string> only;

  bool selected(const std::string& id) const;

  void validate() const;  // throws UsageError
};

enum class Status { Pass, Fail, Skipped };
std::string to_string(Status s);

// How the expected value is justified: a stated result, a definitional
// identity, or a reference computation (named in `oracle`).
enum class Basis { Claim, Identity, Oracle };
std::string to_string(Basis b);

struct Expected {
  std::string value;
  Basis basis = Basis::Claim;
  std::string oracle;
};

struct StratumReport {
  std::string id;
  std::string anchor;
  Expected expected;
  std::string actual;
  Status status = Status::Fail;
  std::string detail;
  double runtime_ms = 0;
};

struct Table {
  std::string name;
  std::vector<std::pair<std::string, long>> rows;
};

struct RunResult {
  std::string subcommand;
  RunConfig config;
  std::vector<StratumReport> checks;
  std::vector<Table> tables;
  long failures() const;
  int exit_code() const { return failures() ? 1 : 0; }
};

const std::vector<std::string>& subcommands();
RunResult run(const std::string& subcommand, const RunConfig& cfg);

std::string render_json(const RunResult& r);
std::string render_csv(const RunResult& r);
std::string render(const RunResult& r);

// Canonical subspace lists cached under $GU22_CACHE_DIR (no caching when unset).
std::vector<Subspace> cached_subspaces(const std::string& key, const std::function<std::vector<Subspace>()>& compute);
std::string cache_file_name(const std::string& key);

}  // namespace gu22::cli

#include "gu22cli/run.hpp"

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "suite.hpp"

namespace gu22::cli {

void RunConfig::validate() const {
  if (p < 3 || !is_prime(p)) throw UsageError("--p must be an odd prime");
  if (k_max < 1 || k_max > 4) throw UsageError("--k-max must be in 1..4");
  if (precision < 4) throw UsageError("--precision must be at least 4");
  if (!(ceiling >= 1)) throw UsageError("--ceiling must be positive");
  if (threads < 1) throw UsageError("--threads must be at least 1");
  if (link_case != "neutral" && link_case != "nonneutral") throw UsageError("--case must be neutral or nonneutral");
  if (link_type != -1) {
    bool ok = link_case == "neutral" ? (link_type == 1 || link_type == 3 || link_type == 5)
                                     : (link_type == 0 || link_type == 2);
    if (!ok) throw UsageError("--type must be 1, 3 or 5 (neutral) or 0, 2 (nonneutral)");
  }
  if (rings != "fp" && rings != "fp2" && rings != "both") throw UsageError("--rings must be fp, fp2 or both");
}

bool RunConfig::selected(const std::string& id) const {
  if (only.empty()) return true;
  for (auto& o : only)
    if (id == o || (id.size() > o.size() && id.compare(0, o.size(), o) == 0 && id[o.size()] == '.')) return true;
  return false;
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
  }
  return "?";
}

std::string to_string(Basis b) {
  switch (b) {
    case Basis::Claim: return "claim";
    case Basis::Identity: return "identity";
    case Basis::Oracle: return "oracle";
  }
  return "?";
}

long RunResult::failures() const {
  long n = 0;
  for (auto& c : checks) n += c.status == Status::Fail;
  return n;
}

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> s{"kottwitz", "clifford", "local-model", "dl-strata", "links", "all"};
  return s;
}

RunResult run(const std::string& subcommand, const RunConfig& cfg) {
  cfg.validate();
  RunResult r;
  r.subcommand = subcommand;
  r.config = cfg;
  Suite s(r);
  if (subcommand == "kottwitz") {
    kottwitz_suite(s);
  } else if (subcommand == "clifford") {
    clifford_suite(s);
  } else if (subcommand == "local-model") {
    local_model_suite(s);
  } else if (subcommand == "dl-strata") {
    dl_strata_suite(s);
  } else if (subcommand == "links") {
    links_suite(s, cfg.link_case);
  } else if (subcommand == "all") {
    kottwitz_suite(s);
    clifford_suite(s);
    local_model_suite(s);
    dl_strata_suite(s);
    links_suite(s, "neutral");
    links_suite(s, "nonneutral");
  } else {
    throw UsageError("unknown subcommand: " + subcommand);
  }
  return r;
}

namespace {

using ojson = nlohmann::ordered_json;

std::string uniformizer_name(Uniformizer u) { return u == Uniformizer::P ? "p" : "up"; }

ojson frame_json(const RunConfig& c) {
  const Tower& t = Tower::get(c.p, c.uniformizer);
  ojson f;
  f["p"] = t.p;
  f["u"] = t.u;
  f["uniformizer"] = uniformizer_name(c.uniformizer);
  f["pi_squared"] = t.c;
  f["eta"] = t.eta_is_eps() ? "eps" : "1";
  return f;
}

ojson config_json(const RunConfig& c) {
  ojson j;
  j["p"] = c.p;
  j["k_max"] = c.k_max;
  j["precision"] = c.precision;
  j["uniformizer"] = uniformizer_name(c.uniformizer);
  j["ceiling"] = static_cast<double>(c.ceiling);
  j["seed"] = c.seed;
  j["case"] = c.link_case;
  j["type"] = c.link_type;
  j["rings"] = c.rings;
  j["only"] = c.only;
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char ch : s) {
    if (ch == '"') o += '"';
    o += ch;
  }
  return o + "\"";
}

std::string ms(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(1) << v;
  return os.str();
}

}  // namespace

// Worker count and timings are left out unless asked for, so reports are
// byte-identical across --threads.
std::string render_json(const RunResult& r) {
  ojson j;
  j["schema_version"] = kSchemaVersion;
  j["subcommand"] = r.subcommand;
  j["config"] = config_json(r.config);
  j["frame"] = frame_json(r.config);
  ojson checks = ojson::array();
  long pass = 0, fail = 0, skipped = 0;
  for (auto& c : r.checks) {
    ojson e;
    e["id"] = c.id;
    e["anchor"] = c.anchor;
    e["expected"] = {{"value", c.expected.value}, {"basis", to_string(c.expected.basis)}};
    if (!c.expected.oracle.empty()) e["expected"]["oracle"] = c.expected.oracle;
    e["actual"] = c.actual;
    e["status"] = to_string(c.status);
    if (!c.detail.empty()) e["detail"] = c.detail;
    if (r.config.timings) e["runtime_ms"] = ms(c.runtime_ms);
    checks.push_back(e);
    pass += c.status == Status::Pass;
    fail += c.status == Status::Fail;
    skipped += c.status == Status::Skipped;
  }
  j["checks"] = checks;
  ojson tables = ojson::array();
  for (auto& t : r.tables) {
    ojson rows = ojson::object();
    for (auto& [k, v] : t.rows) rows[k] = v;
    tables.push_back({{"name", t.name}, {"rows", rows}});
  }
  j["tables"] = tables;
  j["summary"] = {{"pass", pass}, {"fail", fail}, {"skipped", skipped}};
  return j.dump(2) + "\n";
}

std::string render_csv(const RunResult& r) {
  std::ostringstream os;
  os << "id,anchor,expected,basis,oracle,actual,status,detail";
  if (r.config.timings) os << ",runtime_ms";
  os << "\n";
  for (auto& c : r.checks) {
    os << csv_field(c.id) << ',' << csv_field(c.anchor) << ',' << csv_field(c.expected.value) << ','
       << to_string(c.expected.basis) << ',' << csv_field(c.expected.oracle) << ',' << csv_field(c.actual) << ','
       << to_string(c.status) << ',' << csv_field(c.detail);
    if (r.config.timings) os << ',' << ms(c.runtime_ms);
    os << "\n";
  }
  return os.str();
}

std::string render(const RunResult& r) { return r.config.format == Format::Json ? render_json(r) : render_csv(r); }

std::string cache_file_name(const std::string& key) {
  // FNV-1a, stable across platforms and runs.
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : key) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h << ".subspaces";
  return os.str();
}

std::vector<Subspace> cached_subspaces(const std::string& key, const std::function<std::vector<Subspace>()>& compute) {
  const char* dir = std::getenv("GU22_CACHE_DIR");
  if (!dir || !*dir) return compute();
  namespace fs = std::filesystem;
  fs::path path = fs::path(dir) / cache_file_name(key);
  {
    std::ifstream in(path);
    std::string line;
    if (in && std::getline(in, line) && line == key) {
      long count = -1;
      in >> count;
      std::vector<Subspace> out;
      bool ok = count >= 0;
      for (long i = 0; ok && i < count; ++i) {
        int d = 0, n = 0;
        if (!(in >> d >> n) || d < 0 || n < 0) {
          ok = false;
          break;
        }
        Subspace S;
        S.rows.assign(d, FFVec(n));
        for (auto& row : S.rows)
          for (auto& x : row)
            if (!(in >> x)) ok = false;
        out.push_back(std::move(S));
      }
      if (ok) return out;
    }
  }
  auto out = compute();
  std::error_code ec;
  fs::create_directories(dir, ec);
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream o(tmp);
    o << key << "\n" << out.size() << "\n";
    for (auto& S : out) {
      int n = S.rows.empty() ? 0 : static_cast<int>(S.rows[0].size());
      o << S.dim() << ' ' << n;
      for (auto& row : S.rows)
        for (int x : row) o << ' ' << x;
      o << "\n";
    }
  }
  fs::rename(tmp, path, ec);
  return out;
}

}  // namespace gu22::cli

#pragma once

#include <chrono>
#include <functional>
#include <sstream>

#include "gu22cli/run.hpp"

namespace gu22::cli {

struct Outcome {
  std::string actual;
  bool ok = false;
  std::string detail;
};

class Suite {
 public:
  explicit Suite(RunResult& r) : r_(r) {}
  const RunConfig& cfg() const { return r_.config; }

  void add(std::string id, std::string anchor, Expected exp, const std::function<Outcome()>& fn) {
    if (!r_.config.selected(id)) return;
    StratumReport rep{std::move(id), std::move(anchor), std::move(exp), "", Status::Fail, "", 0};
    auto t0 = std::chrono::steady_clock::now();
    try {
      Outcome o = fn();
      rep.actual = o.actual;
      rep.status = o.ok ? Status::Pass : Status::Fail;
      rep.detail = o.detail;
    } catch (const CeilingExceeded& e) {
      rep.status = Status::Skipped;
      rep.detail = e.what();
    } catch (const std::exception& e) {
      rep.status = Status::Fail;
      rep.detail = std::string("error: ") + e.what();
    }
    rep.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    r_.checks.push_back(std::move(rep));
  }

  void table(Table t) { r_.tables.push_back(std::move(t)); }

 private:
  RunResult& r_;
};

inline Expected claim(std::string v) { return {std::move(v), Basis::Claim, ""}; }
inline Expected identity(std::string v) { return {std::move(v), Basis::Identity, ""}; }
inline Expected oracle(std::string v, std::string name) { return {std::move(v), Basis::Oracle, std::move(name)}; }

template <class T>
std::string str_of(const T& x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

inline std::string yes_no(bool b) { return b ? "true" : "false"; }

void kottwitz_suite(Suite& s);
void clifford_suite(Suite& s);
void local_model_suite(Suite& s);
void dl_strata_suite(Suite& s);
void links_suite(Suite& s, const std::string& which);

}  // namespace gu22::cli

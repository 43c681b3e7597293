// Acceptance run: one line per criterion, exit status 1 if any criterion fails.
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "gu22cli/run.hpp"

using namespace gu22;
using namespace gu22::cli;

namespace {

struct Job {
  std::string sub;
  long p;
  Uniformizer u;
  std::vector<std::string> ids;
  std::string link_case = "neutral";
};

struct Criterion {
  int n;
  std::string what;
  double limit_s;
  std::vector<Job> jobs;
};

// A criterion passes when every listed check ran and passed in every configuration.
bool evaluate(const Criterion& c, std::string& note) {
  bool ok = true;
  auto fail = [&](const std::string& why) {
    note += (note.empty() ? "" : "; ") + why;
    ok = false;
  };
  for (const auto& j : c.jobs) {
    RunConfig cfg;
    cfg.p = j.p;
    cfg.uniformizer = j.u;
    cfg.k_max = 2;
    cfg.link_case = j.link_case;
    cfg.only = j.ids;
    RunResult r = run(j.sub, cfg);
    for (const auto& id : j.ids) {
      const StratumReport* hit = nullptr;
      for (const auto& ch : r.checks)
        if (ch.id == id) hit = &ch;
      std::string where = id + " (p=" + std::to_string(j.p) + (j.u == Uniformizer::UP ? ", up" : "") + ")";
      if (!hit) fail(where + " did not run");
      else if (hit->status != Status::Pass) fail(where + ": expected " + hit->expected.value + ", got " + hit->actual);
    }
  }
  return ok;
}

std::vector<Job> both_uniformizers(const std::string& sub, std::vector<long> ps, std::vector<std::string> ids) {
  std::vector<Job> out;
  for (long p : ps)
    for (Uniformizer u : {Uniformizer::P, Uniformizer::UP}) out.push_back({sub, p, u, ids});
  return out;
}

}  // namespace

int main() {
  const auto P = Uniformizer::P;
  const std::vector<std::string> charts{"local-model.chart.U0.fp", "local-model.chart.U0.zp2",
                                        "local-model.chart.U1.fp", "local-model.chart.U1.zp2",
                                        "local-model.chart.U2.fp", "local-model.chart.U2.zp2"};
  auto local = [&](long p) {
    std::vector<std::string> ids{"local-model.unique-point", "local-model.tangent"};
    ids.insert(ids.end(), charts.begin(), charts.end());
    return Job{"local-model", p, P, ids};
  };
  std::vector<std::string> strata;
  for (const char* sp : {"split4", "split6", "nonsplit4", "nonsplit6"})
    for (int k = 1; k <= 2; ++k) {
      std::string base = std::string("dl.") + sp + ".k" + std::to_string(k);
      if (std::string(sp).rfind("split", 0) == 0) strata.push_back(base + ".partition");
      strata.push_back(base + ".r-bound");
    }

  const std::vector<Criterion> criteria{
      {1, "Kottwitz table", 1, both_uniformizers("kottwitz", {3, 5, 7}, {"kottwitz.b0", "kottwitz.b1"})},
      {2, "neutrality equivalence", 1, both_uniformizers("kottwitz", {3, 5, 7}, {"neutrality.b0", "neutrality.b1"})},
      {3, "Clifford suite", 5,
       {{"clifford", 3, P, {"clifford.x-gram", "clifford.y-gram", "clifford.disc-hasse", "clifford.picl", "clifford.adjoint"}},
        {"clifford", 5, P, {"clifford.x-gram", "clifford.y-gram", "clifford.disc-hasse", "clifford.picl", "clifford.adjoint"}}}},
      {4, "local model at p=3 and p=5", 300, {local(3), local(5)}},
      {5, "DL strata partition, p=3, k<=2", 120, {{"dl-strata", 3, P, strata}}},
      {6, "Fermat comparison", 120, {{"dl-strata", 3, P, {"dl.fermat.k1", "dl.fermat.k2", "dl.fermat-count"}}}},
      {7, "SO6 to SO5 bijection", 120, {{"dl-strata", 3, P, {"dl.so6-so5"}}}},
      {8, "neutral link counts", 60,
       {{"links", 3, P, {"links.neutral.sub-vertex", "links.neutral.incidence"}},
        {"links", 5, P, {"links.neutral.sub-vertex"}}}},
      {9, "non-neutral link counts", 60,
       {{"links", 3, P, {"links.nonneutral.incidence"}, "nonneutral"},
        {"links", 5, P, {"links.nonneutral.incidence"}, "nonneutral"}}},
      {10, "correspondence audit", 120,
       {{"links", 3, P, {"links.neutral.correspondence"}}, {"links", 5, P, {"links.neutral.correspondence"}}}},
      {11, "special lattice towers", 120, {{"clifford", 3, P, {"clifford.tower"}}}},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    std::string note;
    auto t0 = std::chrono::steady_clock::now();
    bool ok = evaluate(c, note);
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (ok && s > c.limit_s) {
      ok = false;
      note = "over time limit";
    }
    failed += !ok;
    std::printf("criterion %2d %s  %s (%.2fs, limit %.0fs)%s%s\n", c.n, ok ? "PASS" : "FAIL", c.what.c_str(), s,
                c.limit_s, note.empty() ? "" : ": ", note.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}

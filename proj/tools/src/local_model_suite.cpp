#include <random>

#include "gu22/localmodel.hpp"
#include "suite.hpp"

namespace gu22::cli {

void local_model_suite(Suite& s) {
  const RunConfig& cfg = s.cfg();
  const int p = static_cast<int>(cfg.p);
  const Tower& t = Tower::get(cfg.p, cfg.uniformizer);

  std::optional<NaiveEnumeration> e;
  auto naive = [&]() -> const NaiveEnumeration& {
    if (!e) {
      std::ostringstream key;
      key << "local-model-lagrangians|p=" << p << "|ceiling=" << static_cast<double>(cfg.ceiling);
      auto lags = cached_subspaces(key.str(), [&] { return local_model_lagrangians(p, cfg.ceiling, cfg.threads); });
      e = classify_naive(p, lags);
    }
    return *e;
  };

  s.add("local-model.unique-point", "unique rational point of the local model", claim("#C0 = 1"), [&] {
    auto& n = naive();
    s.table({"local-model strata", {{"lagrangians", n.lagrangians}, {"C0", n.counts[0]}, {"C1", n.counts[1]},
                                    {"C2", n.counts[2]}}});
    return Outcome{"#C0 = " + std::to_string(n.counts[0]), n.counts[0] == 1,
                   "C1 " + std::to_string(n.counts[1]) + ", C2 " + std::to_string(n.counts[2])};
  });
  s.add("local-model.standard-points", "the standard points lie in their strata", claim("F0 in C0, F1 in C1, F2 in C2"),
        [&] {
          std::string act;
          bool ok = true;
          for (int r = 0; r < 3; ++r) {
            auto F = standard_point(p, r);
            bool in = is_naive_point(p, F) && pi_rank(p, F) == r;
            ok = ok && in;
            act += (r ? ", F" : "F") + std::to_string(r) + (in ? " in C" : " not in C") + std::to_string(r);
          }
          return Outcome{act, ok, ""};
        });
  s.add("local-model.round-trip", "every enumerated point satisfies the three conditions",
        identity("all points re-verified"), [&] {
          long bad = 0;
          for (auto& pt : naive().points) bad += !is_naive_point(p, pt.F);
          return Outcome{bad ? std::to_string(bad) + " failures" : "all points re-verified", bad == 0, ""};
        });
  s.add("local-model.tangent", "tangent dimensions: 5 at the singular point, 4 on C0 and C2, 3 on C1",
        oracle("5 at y0 only; 4 on C0+C2 otherwise; 3 on C1", "quadric cone and smooth strata"), [&] {
          auto h = tangent_histogram(naive());
          Table tab{"tangent dimensions (r, dim)", {}};
          bool ok = true;
          for (auto& [k, n] : h) {
            tab.rows.push_back({"r=" + std::to_string(k.first) + " dim=" + std::to_string(k.second), n});
            if (k.first == 0) ok = ok && k.second == 5 && n == 1;
            if (k.first == 1) ok = ok && k.second == 3;
            if (k.first == 2) ok = ok && k.second == 4;
          }
          std::string act;
          for (auto& [k, n] : tab.rows) act += (act.empty() ? "" : "; ") + k + ": " + std::to_string(n);
          s.table(tab);
          return Outcome{act, ok, ""};
        });
  s.add("local-model.components", "C0 and C2 lie in one component, C1 in the other",
        claim("C0, C2 in OGr+; C1 in OGr-"), [&] {
          auto a = component_split_audit(naive());
          std::ostringstream os;
          for (int r = 0; r < 3; ++r) os << (r ? "; " : "") << "C" << r << " +" << a.plus[r] << " -" << a.minus[r];
          return Outcome{os.str(), a.ok(), "reference Lagrangian chosen so that F2 is in OGr+"};
        });
  s.add("local-model.group-invariance", "stratum counts are invariant under the group action",
        identity("counts unchanged under 20 elements"), [&] {
          auto& n = naive();
          long bad = 0;
          for (int i = 0; i < 20; ++i) {
            auto g = random_group_element(p, cfg.seed * 1000003ul + static_cast<unsigned long>(i));
            std::array<long, 3> c{};
            for (auto& pt : n.points) {
              auto F = apply_group(p, g, pt.F);
              if (!is_naive_point(p, F)) {
                ++bad;
                break;
              }
              ++c[pi_rank(p, F)];
            }
            bad += c != n.counts;
          }
          return Outcome{bad ? std::to_string(bad) + " elements change the counts" : "counts unchanged under 20 elements",
                         bad == 0, ""};
        });

  std::optional<ChartReport> charts;
  auto chart = [&]() -> const ChartReport& {
    if (!charts) charts = verify_chart_equations(p, t.c, cfg.threads);
    return *charts;
  };
  for (const char* name : {"U0", "U1", "U2"})
    for (int ring = 1; ring <= 2; ++ring) {
      if ((ring == 1 && cfg.rings == "fp2") || (ring == 2 && cfg.rings == "fp")) continue;
      const std::string ring_name = ring == 1 ? "F_p" : "Z/p^2";
      const std::string id = std::string("local-model.chart.") + name + (ring == 1 ? ".fp" : ".zp2");
      const char* expect = std::string(name) == "U0"   ? "quadric y11^2 + y12 y21 + y13 y31 = pi^2"
                           : std::string(name) == "U1" ? "affine 3-space in characteristic p"
                                                       : "affine 4-space";
      s.add(id, std::string("chart ") + name + " solution set over " + ring_name, claim(expect), [&, name, ring] {
        long m = ring == 1 ? p : static_cast<long>(p) * p;
        for (auto& c : chart().checks)
          if (c.chart == name && c.modulus == m)
            return Outcome{std::to_string(c.actual) + " solutions, " + std::to_string(c.printed) + " described",
                           c.matches, c.first_discrepancy};
        return Outcome{"missing", false, ""};
      });
      s.add(id + ".relations", std::string("printed linear relations of chart ") + name + " over " + ring_name,
            claim("same solutions as the linear conditions"), [&, name, ring] {
              long m = ring == 1 ? p : static_cast<long>(p) * p;
              for (auto& c : chart().checks)
                if (c.chart == name && c.modulus == m)
                  return Outcome{c.relations_match ? "same" : "different", c.relations_match, c.relations_note};
              return Outcome{"missing", false, ""};
            });
    }
}

}  // namespace gu22::cli

#include "gu22/stratcount.hpp"
#include "suite.hpp"

namespace gu22::cli {

namespace {

std::string counts_str(const std::map<int, long>& m) {
  std::string s;
  for (auto& [k, v] : m) s += (s.empty() ? "" : ", ") + std::string("type ") + std::to_string(k) + ": " + std::to_string(v);
  return s.empty() ? "none" : s;
}

template <class E>
void link_table(Suite& s, const std::string& name, const LinkAmbient<E>& amb, const VertexLattice<E>& T,
                const LinkOptions& opt) {
  auto lt = link_counts(amb, T, opt);
  Table tab{name + " (type " + std::to_string(T.type) + ")", {}};
  for (auto& [k, v] : lt.sub) tab.rows.push_back({"sub type " + std::to_string(k), v});
  for (auto& [k, v] : lt.super) tab.rows.push_back({"super type " + std::to_string(k), v});
  s.table(tab);
}

void neutral(Suite& s, const LinkOptions& opt, int type) {
  const RunConfig& cfg = s.cfg();
  const Tower& t = Tower::get(cfg.p, cfg.uniformizer);
  const long p = t.p;
  const long lines = (p + 1) * (p * p + 1);
  auto Q = quadratic_ambient(t);
  std::optional<VertexLattice<Rat>> L5;
  auto rep = [&]() -> const VertexLattice<Rat>& {
    if (!L5) L5 = quadratic_type5(Q);
    if (!L5 || L5->type != 5) throw std::runtime_error("no type-5 vertex lattice found");
    return *L5;
  };
  std::optional<std::vector<VertexLattice<Rat>>> sub_cache;
  auto subs = [&]() -> const std::vector<VertexLattice<Rat>>& {
    if (!sub_cache) sub_cache = enumerate_subvertex(Q, rep(), opt);
    return *sub_cache;
  };

  s.add("links.neutral.residue", "residue space of a type-5 vertex lattice", identity("dimension 5"), [&] {
    auto rs = residue_space(Q, rep());
    return Outcome{"dimension " + std::to_string(rs.space.n) + ", " + to_string(rs.space.kind), rs.space.n == 5,
                   rs.quotient};
  });
  s.add("links.neutral.sub-vertex", "vertex lattices of types 1 and 3 inside a type-5 lattice",
        oracle("type 1: " + std::to_string(lines) + ", type 3: " + std::to_string(lines),
               "isotropic planes and lines of the 5-dimensional residue space"),
        [&] {
          std::map<int, long> c;
          for (auto& v : subs()) ++c[v.type];
          return Outcome{counts_str(c), c.size() == 2 && c[1] == lines && c[3] == lines, ""};
        });
  s.add("links.neutral.sub-residues", "residue dimension equals type for every sub-vertex lattice",
        identity("all match"), [&] {
          long bad = 0;
          for (auto& v : subs()) bad += residue_space(Q, v, false).space.n != v.type;
          return Outcome{bad ? std::to_string(bad) + " mismatches" : "all match", bad == 0 && !subs().empty(),
                         std::to_string(subs().size()) + " lattices"};
        });
  s.add("links.neutral.incidence", "type-5 lattices meeting a fixed one in a type-1 lattice",
        claim(std::to_string(p * lines)), [&] {
          auto inc = incidence(Q, rep(), 1, opt);
          long meet1 = inc.by_meet_type.count(1) ? inc.by_meet_type.at(1) : 0;
          std::string det = "meet types: " + counts_str(inc.by_meet_type);
          return Outcome{std::to_string(meet1) + " (of " + std::to_string(inc.neighbours) + " sharing a type-1 lattice)",
                         meet1 == p * lines, det};
        });
  s.add("links.neutral.correspondence", "quadratic and hermitian link counts agree under the dictionary",
        identity("all rows agree"), [&] {
          auto au = correspondence_audit(t, opt);
          Table tab{"correspondence audit", {}};
          long bad = 0;
          for (auto& r : au.rows) {
            tab.rows.push_back({r.relation + " / quadratic", r.quadratic});
            tab.rows.push_back({r.dictionary + " / hermitian", r.hermitian});
            bad += !r.agree();
          }
          s.table(tab);
          return Outcome{bad ? std::to_string(bad) + " rows differ" : "all rows agree", au.all_agree(),
                         std::to_string(au.rows.size()) + " rows"};
        });
  s.add("links.neutral.table", "link table of the selected vertex lattice",
        identity("type " + std::to_string(type == -1 ? 5 : type)), [&] {
          int want = type == -1 ? 5 : type;
          if (want == 5) {
            link_table(s, "neutral link", Q, rep(), opt);
            return Outcome{"type 5", true, ""};
          }
          for (auto& v : subs())
            if (v.type == want) {
              link_table(s, "neutral link", Q, v, opt);
              return Outcome{"type " + std::to_string(want), true, ""};
            }
          return Outcome{"none", false, "no vertex lattice of that type"};
        });
}

void nonneutral(Suite& s, const LinkOptions& opt, int type) {
  const RunConfig& cfg = s.cfg();
  const Tower& t = Tower::get(cfg.p, cfg.uniformizer);
  const long p = t.p;
  auto H = hermitian_ambient(1, t);
  auto T = hermitian_self_dual(H);
  std::optional<std::vector<VertexLattice<SymElem>>> sub_cache;
  auto subs = [&]() -> const std::vector<VertexLattice<SymElem>>& {
    if (!sub_cache) sub_cache = enumerate_subvertex(H, T, opt);
    return *sub_cache;
  };

  s.add("links.nonneutral.residue", "residue space of the self-dual lattice", claim("non-split, dimension 4"), [&] {
    auto rs = residue_space(H, T, false);
    return Outcome{"dimension " + std::to_string(rs.space.n) + ", " + to_string(rs.space.kind), rs.matches(),
                   rs.quotient};
  });
  s.add("links.nonneutral.sub-vertex", "type-2 lattices inside the self-dual lattice",
        oracle("type 2: " + std::to_string(p * p + 1), "isotropic lines of the non-split residue space"), [&] {
          std::map<int, long> c;
          for (auto& v : subs()) ++c[v.type];
          return Outcome{counts_str(c), c.size() == 1 && c[2] == p * p + 1, ""};
        });
  s.add("links.nonneutral.sub-residues", "residue space of a type-t lattice is non-split of dimension 4-t",
        claim("all match"), [&] {
          long bad = 0;
          for (auto& v : subs()) bad += !residue_space(H, v, false).matches();
          return Outcome{bad ? std::to_string(bad) + " mismatches" : "all match", bad == 0 && !subs().empty(),
                         std::to_string(subs().size()) + " lattices"};
        });
  s.add("links.nonneutral.incidence", "self-dual lattices sharing a type-2 lattice with a fixed one",
        claim(std::to_string(p * (p * p + 1))), [&] {
          auto inc = incidence(H, T, 2, opt);
          return Outcome{std::to_string(inc.neighbours), inc.neighbours == p * (p * p + 1),
                         "meet types: " + counts_str(inc.by_meet_type)};
        });
  s.add("links.nonneutral.table", "link table of the selected vertex lattice",
        identity("type " + std::to_string(type == -1 ? 0 : type)), [&] {
          int want = type == -1 ? 0 : type;
          if (want == 0) {
            link_table(s, "non-neutral link", H, T, opt);
            return Outcome{"type 0", true, ""};
          }
          if (subs().empty()) return Outcome{"none", false, "no vertex lattice of that type"};
          link_table(s, "non-neutral link", H, subs().front(), opt);
          return Outcome{"type 2", true, ""};
        });
}

}  // namespace

void links_suite(Suite& s, const std::string& which) {
  LinkOptions opt;
  opt.ceiling = s.cfg().ceiling;
  opt.threads = s.cfg().threads;
  // --type belongs to --case; under `all` the other case uses its default.
  const int type = which == s.cfg().link_case ? s.cfg().link_type : -1;
  if (which == "neutral") neutral(s, opt, type);
  else nonneutral(s, opt, type);
}

}  // namespace gu22::cli

#include "gu22/invariants.hpp"
#include "suite.hpp"

namespace gu22::cli {

namespace {

std::string kappa_str(const KottwitzClass& k) { return "(" + std::to_string(k.w) + "," + std::to_string(k.d) + ")"; }

}  // namespace

void kottwitz_suite(Suite& s) {
  const Tower& t = Tower::get(s.cfg().p, s.cfg().uniformizer);
  const SMat H = antidiagonal_hermitian(4);
  const auto b0 = make_group_element(b0_matrix(t), H);
  const auto b1 = make_group_element(b1_matrix(t), H);
  const auto L = lambda_bar(t);

  s.add("kottwitz.b0", "Kottwitz invariant of b0", claim("(1,0)"), [&] {
    auto k = kottwitz(b0);
    return Outcome{kappa_str(k), k.w == 1 && k.d == 0, ""};
  });
  s.add("kottwitz.b1", "Kottwitz invariant of b1", claim("(1,1)"), [&] {
    auto k = kottwitz(b1);
    return Outcome{kappa_str(k), k.w == 1 && k.d == 1, ""};
  });
  s.add("kottwitz.mu-neutral", "b0 is mu-neutral and b1 is not", claim("true,false"), [&] {
    bool a = is_mu_neutral(b0), b = is_mu_neutral(b1);
    return Outcome{yes_no(a) + "," + yes_no(b), a && !b, ""};
  });
  s.add("kottwitz.slope-half", "b0 and b1 are basic of slope 1/2", claim("true,true"), [&] {
    bool a = is_basic_slope_half(b0, t), b = is_basic_slope_half(b1, t);
    return Outcome{yes_no(a) + "," + yes_no(b), a && b, ""};
  });
  s.add("kottwitz.dil", "the base lattice satisfies the lattice conditions for b0 and b1", claim("true,true"), [&] {
    auto d0 = dil_conditions(L, b0, H), d1 = dil_conditions(L, b1, H);
    return Outcome{yes_no(d0.all()) + "," + yes_no(d1.all()), d0.all() && d1.all(),
                   "length_middle " + std::to_string(d0.length_middle) + "," + std::to_string(d1.length_middle)};
  });
  for (int j : {0, 1}) {
    s.add("neutrality.b" + std::to_string(j), "equivalent characterizations of neutrality",
          claim(j == 0 ? "all four true" : "all four false"), [&, j] {
            auto n = neutrality_report(j == 0 ? b0 : b1, L, H, cb_gram(j, t));
            bool want = j == 0;
            std::string act = std::string(n.i ? "T" : "F") + (n.ii_squared ? "T" : "F") + (n.iii ? "T" : "F") +
                              (n.iv ? "T" : "F");
            return Outcome{act, n.agree && n.i == want,
                           "(ii) literal det/sml reading " + yes_no(n.ii_literal) + "; length " +
                               std::to_string(n.iv_length)};
          });
  }
}

}  // namespace gu22::cli

#include "gu22/lattices.hpp"

namespace gu22 {

Rat reduce_mod_pk(const Rat& x, long p, int k) {
  if (sgn(x) == 0) return Rat(0);
  int v = ord_p(x, p);
  if (v >= k) return Rat(0);
  int s = v < 0 ? -v : 0;
  // x = y / p^s with y p-integral; reduce y mod p^{k+s}.
  Rat y = x * pow_p(p, s);
  Int mod = ipow(p, k + s);
  Int num = y.get_num(), den = y.get_den();
  Int inv;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t()) == 0)
    throw std::logic_error("reduce_mod_pk: denominator not invertible");
  Int r = (num * inv) % mod;
  if (sgn(r) < 0) r += mod;
  return Rat(r) / pow_p(p, s);
}

}  // namespace gu22

#include "ktype/hilbert.hpp"

namespace ktype {

RootOfUnity hilbert_symbol(const LocalField& F, const TruncElt& a, const TruncElt& b) {
    // c = (-1)^(va vb) a^vb / b^va needs one residue digit; in exponents of g:
    // dlog(c) = (q-1)/2 * va vb + vb dlog(a) - va dlog(b) mod q-1,
    // and the symbol c^((q-1)/n) is zeta_n^dlog(c)
    const i64 q1 = F.q() - 1;
    i64 da = F.dlog(a.unit % F.p()), db = F.dlog(b.unit % F.p());
    i64 sign = ((a.val & 1) && (b.val & 1)) ? q1 / 2 : 0;
    i64 e = sign + floor_mod(b.val, q1) * da - floor_mod(a.val, q1) * db;
    return F.mu(floor_mod(e, q1));
}

}  // namespace ktype

#pragma once

// The tame n-th Hilbert symbol (a,b)_n = c^((q-1)/n) with
// c = (-1)^(val a * val b) * a^(val b) / b^(val a) read in the residue field,
// and the degree-one ramified character eta(a) = (pi, a)_n.

#include "ktype/localfield.hpp"

namespace ktype {

RootOfUnity hilbert_symbol(const LocalField& F, const TruncElt& a, const TruncElt& b);

inline RootOfUnity eta(const LocalField& F, const TruncElt& a) {
    return hilbert_symbol(F, F.uniformizer(), a);
}

}  // namespace ktype

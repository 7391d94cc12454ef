#pragma once

#include <utility>
#include <vector>

#include "fotpi/rational.hpp"

namespace fotpi {

/// Executable reference implementations of the sequence-coding layer; these
/// are the oracles the dec/decn formulae are tested against.

/// beta(b,c,i) = b mod (c(i+1)+1)
Int godel_beta(const Int& b, const Int& c, const Int& i);

/// pair(b,c) = (b+c)(b+c+1)/2 + c
Int cantor_pair(const Int& b, const Int& c);
std::pair<Int, Int> cantor_unpair(const Int& r);

/// Minimal pair(b,c) with beta(b,c,0) = n and beta(b,c,i) = a_i for i in [n].
/// Throws on an empty sequence.
Int godel_encode(const std::vector<Int>& seq);

/// The sequence decoded from r (entries beta(b,c,i), i in [1..beta(b,c,0)]).
std::vector<Int> godel_decode(const Int& r);

bool decn_holds(const Int& r, const Int& i, const Int& a);
/// decn plus minimality of r among codes with the same decoded values.
bool dec_holds(const Int& r, const Int& i, const Int& a);

}  // namespace fotpi

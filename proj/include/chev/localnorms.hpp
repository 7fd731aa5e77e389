#pragma once

// Hilbert symbols over the completions of Q, the Hasse norm test for
// quadratic fields, and the group of S-units of Q that are norms from K.

#include <optional>
#include <vector>

#include "chev/sunits.hpp"

namespace chev {

int hilbert_symbol(const Rational& a, const Rational& b, const Place& v);

struct NormTest {
  bool is_norm = false;
  std::vector<Place> places_checked;
  std::optional<KElem> witness;  // N(witness) = x exactly
};

// Local test at infinity and at every prime dividing 2 D num(x) den(x);
// a witness is searched for among (y + z sqrt D)/2 with |y|, |z| <= search_bound.
NormTest is_global_norm(const Rational& x, const QuadField& K, long search_bound = 60);

struct WGroup {
  QuadField K;
  SSet S;
  std::vector<Place> symbol_places;
  IntMatrix symbols;                   // places x generators of O_{Q,S}^*, entries 0 (+1) or 1 (-1)
  Lattice w;                           // inside Z^{1+|S_fin|}, coordinates as rational_s_unit_coordinates
  Integer index;                       // [O_{Q,S}^* : W]
};

WGroup w_group(const QuadField& K, const SSet& S);

// W / N(O_{K,S}^*).
FinAbGroup h1_k_mod_units(const WGroup& W, const SUnitModule& M);

}  // namespace chev

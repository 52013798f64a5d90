#pragma once

#include <map>
#include <vector>

#include "trec/auxbasis.hpp"
#include "trec/rational.hpp"

namespace trec {

// A multidifferential with n legs, stored as a symmetric tensor over the
// auxiliary basis: keys are sorted vectors of BasisIndex, one per leg.
// Insertion of the same key through different computation paths must agree;
// the container enforces that, which doubles as a symmetry check.
class Correlator {
public:
  Correlator() = default;
  Correlator(int g, int n) : g_(g), n_(n) {}

  int genus() const { return g_; }
  int legs() const { return n_; }

  const std::map<std::vector<BasisIndex>, Rational>& terms() const {
    return terms_;
  }

  // Coefficient of a (not necessarily sorted) basis monomial.
  Rational coeff(std::vector<BasisIndex> key) const;

  // Accumulate into a key (sorted internally).
  void add(std::vector<BasisIndex> key, const Rational& value);

  // Set a key that must not conflict with an existing different value.
  void setChecked(std::vector<BasisIndex> key, const Rational& value);

  bool empty() const { return terms_.empty(); }

private:
  int g_ = 0;
  int n_ = 0;
  std::map<std::vector<BasisIndex>, Rational> terms_;
};

}  // namespace trec

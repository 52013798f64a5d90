#include "trec/correlator.hpp"

#include <algorithm>

#include "trec/common.hpp"

namespace trec {

Rational Correlator::coeff(std::vector<BasisIndex> key) const {
  std::sort(key.begin(), key.end());
  auto it = terms_.find(key);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Correlator::add(std::vector<BasisIndex> key, const Rational& value) {
  if (value == 0) return;
  std::sort(key.begin(), key.end());
  auto [it, inserted] = terms_.emplace(std::move(key), value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0) terms_.erase(it);
  }
}

void Correlator::setChecked(std::vector<BasisIndex> key,
                            const Rational& value) {
  std::sort(key.begin(), key.end());
  auto it = terms_.find(key);
  if (it != terms_.end()) {
    if (it->second != value) {
      throw MathError("correlator symmetry violation: conflicting values for one basis monomial");
    }
    return;
  }
  if (value != 0) terms_.emplace(std::move(key), value);
}

}  // namespace trec

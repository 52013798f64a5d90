#pragma once

#include <string>
#include <vector>

#include "trec/laurent.hpp"
#include "trec/ratfunc.hpp"

namespace trec {

enum class CurveId { Airy, Bessel, ThetaP1, GwP1 };

CurveId curveIdFromName(const std::string& name);  // "airy" | "bessel" | "theta-p1" | "gw-p1"
std::string curveName(CurveId id);

struct BranchPoint {
  Rational z;          // location in the z-chart (a simple zero of dx)
  bool irregular;      // y has a simple pole here (regular: y finite)
  Rational xValue;     // x(z) at the point
  Rational nuSq;       // 1/x''(z) at the point (exact rational; sign matters)
};

// Local expansion of the 1-form y dx at a branch point, as a density in the
// local coordinate u:  y dx = [regular(u) + log(alpha) * logConst(u)] du.
// The symbolic constant log(alpha) only ever multiplies terms whose residue
// pairing vanishes; callers assert that.
struct YdxSeries {
  LaurentSeries regular;
  LaurentSeries logConst;
};

// A rational spectral curve with global coordinate z: functions x and y, a
// global rational involution sigma with x(sigma(z)) = x(z), the Cauchy-kernel
// bidifferential dz1 dz2/(z1-z2)^2, and simple branch points.  y is either a
// rational function or log z (the latter given through its local expansions;
// it never needs to be evaluated globally).
class SpectralCurve {
public:
  static const SpectralCurve& get(CurveId id);

  CurveId id() const { return id_; }
  const std::string& name() const { return name_; }
  const RatFunc& x() const { return x_; }
  const RatFunc& xPrime() const { return xPrime_; }
  const RatFunc& sigma() const { return sigma_; }
  bool yIsLog() const { return yIsLog_; }
  const RatFunc& yRat() const;  // throws if y = log z
  const std::vector<BranchPoint>& branchPoints() const { return branch_; }
  int branchCount() const { return static_cast<int>(branch_.size()); }

  Rational alphaValue(int i) const { return branch_[i].z; }

  ExpansionPoint alpha(int i) const {
    return ExpansionPoint::finite(branch_[i].z);
  }

  // y(z) - y(sigma(z)) as a series in u = z - alpha_i.  Always single-valued
  // and vanishing/simple-pole as dictated by regularity; for y = log z the
  // branch constants cancel, leaving 2 log(1 + u/alpha).
  LaurentSeries deltaY(int i, int order) const;

  // y dx at branch point i (see YdxSeries).
  YdxSeries ydx(int i, int order) const;

  // x(z) - x(alpha_i) as a series in u (double zero at u = 0).
  LaurentSeries xShifted(int i, int order) const;

private:
  SpectralCurve(CurveId id, std::string name, RatFunc x, bool yIsLog, RatFunc yRat,
                RatFunc sigma);
  void findBranchPoints();
  void validate() const;

  CurveId id_;
  std::string name_;
  RatFunc x_;
  RatFunc xPrime_;
  bool yIsLog_;
  RatFunc yRat_;
  RatFunc sigma_;
  std::vector<BranchPoint> branch_;
};

}  // namespace trec

#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Cost functionals over the pair (x, y) = (time until agent 0 reaches the
// target, time until agent 1 reaches the target).  A cost is reported in
// normalized form f(x, y) / f(1, 1) so that the unit of time cancels.
//
// The relaxation machinery needs f expressed as a max of linear forms
// u*x + v*y with u, v >= 0; linear_terms() hands those out and refuses
// functionals (like Min) where no such representation exists.

namespace wgs {

enum class CostKind {
  Proj2,        // f(x, y) = y                (second agent's arrival)
  MaxNorm,      // f(x, y) = max(x, y)
  WeightedAvg,  // f(x, y) = w*x + y,  w in [0, 1]
  Min,          // f(x, y) = min(x, y)        (diagnostics only)
};

struct CostFn {
  CostKind kind = CostKind::Proj2;
  double w = 0.0;  // only meaningful for WeightedAvg

  static CostFn proj2() { return {CostKind::Proj2, 0.0}; }
  static CostFn max_norm() { return {CostKind::MaxNorm, 0.0}; }
  static CostFn weighted(double w) {
    if (!(w >= 0.0 && w <= 1.0))
      throw std::invalid_argument("weighted-average cost needs w in [0,1]");
    return {CostKind::WeightedAvg, w};
  }
  static CostFn min_norm() { return {CostKind::Min, 0.0}; }

  double evaluate(double x, double y) const {
    switch (kind) {
      case CostKind::Proj2: return y;
      case CostKind::MaxNorm: return std::max(x, y);
      case CostKind::WeightedAvg: return w * x + y;
      case CostKind::Min: return std::min(x, y);
    }
    throw std::logic_error("unreachable cost kind");
  }

  // f(1, 1); every supported functional is positively homogeneous, so this
  // is the right scale factor for normalized costs.
  double normalization() const {
    switch (kind) {
      case CostKind::Proj2: return 1.0;
      case CostKind::MaxNorm: return 1.0;
      case CostKind::WeightedAvg: return w + 1.0;
      case CostKind::Min: return 1.0;
    }
    throw std::logic_error("unreachable cost kind");
  }

  double normalized(double x, double y) const {
    return evaluate(x, y) / normalization();
  }

  // f as max of linear forms: f(x,y) = max_k (u_k*x + v_k*y).
  std::vector<std::pair<double, double>> linear_terms() const {
    switch (kind) {
      case CostKind::Proj2: return {{0.0, 1.0}};
      case CostKind::MaxNorm: return {{1.0, 0.0}, {0.0, 1.0}};
      case CostKind::WeightedAvg: return {{w, 1.0}};
      case CostKind::Min:
        throw std::invalid_argument(
            "min-cost is not a max of linear forms; no relaxation objective");
    }
    throw std::logic_error("unreachable cost kind");
  }

  std::string name() const {
    switch (kind) {
      case CostKind::Proj2: return "proj2";
      case CostKind::MaxNorm: return "max";
      case CostKind::WeightedAvg: return "gw(" + std::to_string(w) + ")";
      case CostKind::Min: return "min";
    }
    return "?";
  }
};

}  // namespace wgs

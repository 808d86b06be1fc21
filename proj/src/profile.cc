#include "antpower/profile.h"

#include <cmath>
#include <limits>
#include <utility>

#include "antpower/errors.h"

namespace antpower {
namespace {

constexpr int kMonotonicityGrid = 1000;
constexpr double kMonotonicitySlack = 1e-12;

}  // namespace

CostProfile::CostProfile(double log_coefficient, std::vector<double> polynomial,
                         LogBase base)
    : log_coefficient_(log_coefficient),
      polynomial_(std::move(polynomial)),
      base_(base) {
  if (!std::isfinite(log_coefficient_)) {
    throw DomainError("cost profile: non-finite log coefficient");
  }
  for (double a : polynomial_) {
    if (!std::isfinite(a)) {
      throw DomainError("cost profile: non-finite polynomial coefficient");
    }
  }
  double previous = Evaluate(0.0);
  if (previous < -kMonotonicitySlack) {
    throw DomainError("cost profile: negative cost at zero load");
  }
  for (int k = 1; k <= kMonotonicityGrid; ++k) {
    double value = Evaluate(static_cast<double>(k) / kMonotonicityGrid);
    if (value < previous - kMonotonicitySlack * (1.0 + std::abs(previous))) {
      throw DomainError("cost profile: decreasing on [0, 1]");
    }
    if (value < -kMonotonicitySlack) {
      throw DomainError("cost profile: negative on [0, 1]");
    }
    previous = value;
  }
}

CostProfile CostProfile::Logarithmic(LogBase base) {
  return CostProfile(1.0, {}, base);
}

CostProfile CostProfile::Linear() { return CostProfile(0.0, {0.0, 1.0}); }

CostProfile CostProfile::Cubic() {
  return CostProfile(0.0, {0.0, 0.0, 0.0, 1.0});
}

CostProfile CostProfile::FromName(const std::string& name, LogBase base) {
  if (name == "log") return Logarithmic(base);
  if (name == "linear") return Linear();
  if (name == "cubic") return Cubic();
  throw DomainError("unknown cost profile '" + name + "'");
}

double CostProfile::Evaluate(double rho) const {
  if (!(rho >= 0.0)) {
    throw DomainError("cost profile evaluated at negative load");
  }
  double value = 0.0;
  if (log_coefficient_ != 0.0) {
    double lg = base_ == LogBase::kBase10 ? std::log10(1.0 + rho)
                                          : std::log1p(rho);
    value += log_coefficient_ * lg;
  }
  // Horner over a1 + a2 rho + ... + an rho^(n-1).
  double poly = 0.0;
  for (auto it = polynomial_.rbegin(); it != polynomial_.rend(); ++it) {
    poly = poly * rho + *it;
  }
  return value + poly;
}

std::vector<double> CostProfile::Coefficients() const {
  std::vector<double> out;
  out.reserve(polynomial_.size() + 1);
  out.push_back(log_coefficient_);
  out.insert(out.end(), polynomial_.begin(), polynomial_.end());
  return out;
}

double EvalCost(const CostProfile& profile, double rho, bool finite_capacity) {
  if (!(rho >= 0.0)) {
    throw DomainError("cost evaluated at negative load");
  }
  if (finite_capacity && rho > 1.0) {
    return std::numeric_limits<double>::infinity();
  }
  return profile.Evaluate(rho);
}

}  // namespace antpower

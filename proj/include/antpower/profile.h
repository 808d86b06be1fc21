#ifndef ANTPOWER_PROFILE_H_
#define ANTPOWER_PROFILE_H_

#include <string>
#include <vector>

namespace antpower {

enum class LogBase { kBase10, kNatural };

// Load-dependent link power profile
//
//   c(rho) = a0 * log(1 + rho) + sum_{i>=1} a_i * rho^(i-1)
//
// over normalized load rho. The logarithmic term is shifted by one so that
// an idle link stays finite. Profiles are immutable and cheap to copy.
class CostProfile {
 public:
  // Throws DomainError if any coefficient is non-finite, or if the profile is
  // negative or decreasing somewhere on [0, 1] (checked on a 1000-point grid).
  CostProfile(double log_coefficient, std::vector<double> polynomial,
              LogBase base = LogBase::kBase10);

  // a0 = 1.
  static CostProfile Logarithmic(LogBase base = LogBase::kBase10);
  // a2 = 1, i.e. c(rho) = rho.
  static CostProfile Linear();
  // a4 = 1, i.e. c(rho) = rho^3.
  static CostProfile Cubic();

  // Named preset: "log", "linear" or "cubic". Throws DomainError otherwise.
  static CostProfile FromName(const std::string& name,
                              LogBase base = LogBase::kBase10);

  // Raw profile value, no capacity check. Throws DomainError for rho < 0.
  double Evaluate(double rho) const;

  double log_coefficient() const { return log_coefficient_; }
  // a1..an; entry k multiplies rho^k.
  const std::vector<double>& polynomial() const { return polynomial_; }
  LogBase log_base() const { return base_; }

  // Coefficients as written in topology files: a0 a1 ... an.
  std::vector<double> Coefficients() const;

  bool operator==(const CostProfile& other) const = default;

 private:
  double log_coefficient_;
  std::vector<double> polynomial_;
  LogBase base_;
};

// Profile cost at normalized load rho; +infinity when the link has finite
// capacity and rho > 1.
double EvalCost(const CostProfile& profile, double rho, bool finite_capacity);

}  // namespace antpower

#endif  // ANTPOWER_PROFILE_H_

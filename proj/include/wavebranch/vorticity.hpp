#pragma once

#include <string>
#include <vector>

namespace wavebranch {

/// Trichotomy of vorticity functions by where Omega attains its maximum.
/// CaseI is exactly the case where the depth d(s) blows up as s -> s0.
enum class VorticityCase { CaseI, CaseII, CaseIII };

const char* to_string(VorticityCase c);

/// Polynomial vorticity omega(p) = sum_k c_k p^k on p in [0, 1], together
/// with Omega(tau) = int_0^tau omega, s0 = sqrt(2 max Omega), omega0 = max omega
/// and the case classification. Immutable after construction.
class VorticityModel {
 public:
  static constexpr int kMaxDegree = 8;

  /// Coefficients in increasing degree. Throws Error(Validation) if the
  /// degree exceeds kMaxDegree or a coefficient is not finite.
  explicit VorticityModel(std::vector<double> coeffs);

  static VorticityModel zero() { return VorticityModel({0.0}); }

  const std::vector<double>& coeffs() const { return coeffs_; }

  double omega(double p) const;
  double omega_prime(double p) const;
  /// Omega(tau), from the antiderivative polynomial.
  double capital_omega(double tau) const;

  /// max Omega - Omega(tau) >= 0, evaluated from a Taylor expansion about
  /// the nearest maximiser so that it keeps full relative accuracy near it.
  double omega_deficit(double tau) const;
  /// s^2 - 2 Omega(tau), written as (s - s0)(s + s0) + 2 (max Omega - Omega(tau)).
  double gap(double s, double tau) const;

  double max_capital_omega() const { return max_omega_cap_; }
  double min_capital_omega() const { return min_omega_cap_; }
  /// Points of [0, 1] where Omega reaches its maximum.
  const std::vector<double>& argmax() const { return argmax_; }
  double s0() const { return s0_; }
  double omega0() const { return omega0_; }
  VorticityCase case_tag() const { return case_; }
  bool depth_diverges_at_s0() const { return case_ == VorticityCase::CaseI; }

  std::string describe() const;

 private:
  double checked(double p, const char* what) const;

  std::vector<double> coeffs_;
  std::vector<double> antideriv_;                 // Omega coefficients
  std::vector<std::vector<double>> shifted_;      // Omega(t0 + x) - Omega(t0), per argmax
  double max_omega_cap_ = 0.0, min_omega_cap_ = 0.0;
  std::vector<double> argmax_;
  double s0_ = 0.0, omega0_ = 0.0;
  VorticityCase case_ = VorticityCase::CaseI;
};

/// Result of the classification op, mirroring the three derived scalars.
struct Classification {
  VorticityCase case_tag;
  double s0;
  double omega0;
};

Classification classify(const VorticityModel& model);

}  // namespace wavebranch

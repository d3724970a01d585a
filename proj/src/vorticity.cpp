#include "wavebranch/vorticity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wavebranch/error.hpp"
#include "wavebranch/roots.hpp"

namespace wavebranch {
namespace {

constexpr double kSlack = 1e-12;
constexpr int kScanIntervals = 4096;

double horner(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
  return v;
}

std::vector<double> derivative(const std::vector<double>& c) {
  if (c.size() <= 1) return {0.0};
  std::vector<double> d(c.size() - 1);
  for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = static_cast<double>(k) * c[k];
  return d;
}

// Coefficients of P(t0 + x) - P(t0) in powers of x.
std::vector<double> taylor_shift(const std::vector<double>& c, double t0) {
  std::vector<double> b(c);
  const std::size_t n = b.size();
  // Repeated synthetic division.
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = n - 1; k > j; --k) b[k - 1] += t0 * b[k];
  }
  b[0] = 0.0;
  return b;
}

// Local maximisers of the polynomial whose derivative is `d` on [0, 1]:
// endpoints plus downward sign changes of d refined by bisection. Grid points
// of the scan are kept separately as a fallback for roots the scan misses.
struct Candidates {
  std::vector<double> refined;  // endpoints and refined critical points
  std::vector<double> grid;
};

Candidates maximiser_candidates(const std::vector<double>& d) {
  Candidates out;
  out.refined = {0.0, 1.0};
  double prev = horner(d, 0.0);
  for (int i = 1; i <= kScanIntervals; ++i) {
    const double a = static_cast<double>(i - 1) / kScanIntervals;
    const double b = static_cast<double>(i) / kScanIntervals;
    const double cur = horner(d, b);
    if (prev > 0 && cur <= 0) {
      auto r = roots::bracketed([&](double x) { return horner(d, x); }, a, prev, b, cur,
                                {.f_tol = 0.0, .x_tol = 1e-16, .max_iter = 200});
      out.refined.push_back(r ? r->x : 0.5 * (a + b));
    }
    out.grid.push_back(b);
    prev = cur;
  }
  return out;
}

double max_over(const std::vector<double>& poly, const Candidates& c) {
  double m = -INFINITY;
  for (double t : c.refined) m = std::max(m, horner(poly, t));
  for (double t : c.grid) m = std::max(m, horner(poly, t));
  return m;
}

}  // namespace

const char* to_string(VorticityCase c) {
  switch (c) {
    case VorticityCase::CaseI: return "CaseI";
    case VorticityCase::CaseII: return "CaseII";
    case VorticityCase::CaseIII: return "CaseIII";
  }
  return "?";
}

VorticityModel::VorticityModel(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_ = {0.0};
  if (static_cast<int>(coeffs_.size()) > kMaxDegree + 1) {
    throw Error("vorticity", ErrorKind::Validation, "vorticity polynomial degree exceeds 8");
  }
  for (double c : coeffs_) {
    if (!std::isfinite(c)) throw Error("vorticity", ErrorKind::Validation, "non-finite coefficient");
  }
  antideriv_.assign(coeffs_.size() + 1, 0.0);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    antideriv_[k + 1] = coeffs_[k] / static_cast<double>(k + 1);
  }

  const bool identically_zero =
      std::all_of(coeffs_.begin(), coeffs_.end(), [](double c) { return c == 0.0; });

  // Maximum of Omega over critical points of Omega (roots of omega).
  const auto cand = maximiser_candidates(coeffs_);
  max_omega_cap_ = std::max(0.0, max_over(antideriv_, cand));  // Omega(0) = 0
  {
    std::vector<double> neg(antideriv_.size());
    for (std::size_t k = 0; k < antideriv_.size(); ++k) neg[k] = -antideriv_[k];
    std::vector<double> neg_omega(coeffs_.size());
    for (std::size_t k = 0; k < coeffs_.size(); ++k) neg_omega[k] = -coeffs_[k];
    min_omega_cap_ = -max_over(neg, maximiser_candidates(neg_omega));
  }

  const double tie = 1e-13 * std::max(1.0, std::abs(max_omega_cap_));
  if (identically_zero) {
    argmax_ = {0.0, 1.0};
  } else {
    for (double t : cand.refined) {
      if (horner(antideriv_, t) >= max_omega_cap_ - tie) argmax_.push_back(t);
    }
    if (argmax_.empty()) {
      for (double t : cand.grid) {
        if (horner(antideriv_, t) >= max_omega_cap_ - tie) argmax_.push_back(t);
      }
    }
    std::sort(argmax_.begin(), argmax_.end());
    argmax_.erase(std::unique(argmax_.begin(), argmax_.end(),
                              [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                  argmax_.end());
  }
  for (double t : argmax_) shifted_.push_back(taylor_shift(antideriv_, t));

  s0_ = std::sqrt(2.0 * max_omega_cap_);

  // omega0 = max omega on [0, 1] via maximisers of omega (roots of omega').
  omega0_ = max_over(coeffs_, maximiser_candidates(derivative(coeffs_)));

  // Classification.
  const double omega_tol = 1e-14 * std::max(1.0, *std::max_element(coeffs_.begin(), coeffs_.end(),
                                                                   [](double a, double b) {
                                                                     return std::abs(a) < std::abs(b);
                                                                   }));
  const bool interior = std::any_of(argmax_.begin(), argmax_.end(),
                                    [](double t) { return t > kSlack && t < 1.0 - kSlack; });
  const bool at0 = horner(antideriv_, 0.0) >= max_omega_cap_ - tie;
  const bool at1 = horner(antideriv_, 1.0) >= max_omega_cap_ - tie;
  if (identically_zero || interior) {
    case_ = VorticityCase::CaseI;
  } else if (at1 && omega(1.0) > omega_tol) {
    case_ = VorticityCase::CaseIII;
  } else if (at0 && !at1 && omega(0.0) < -omega_tol) {
    case_ = VorticityCase::CaseII;
  } else {
    case_ = VorticityCase::CaseI;
  }
}

double VorticityModel::checked(double p, const char* what) const {
  if (!(p >= -kSlack && p <= 1.0 + kSlack)) {
    std::ostringstream os;
    os << what << ": argument " << p << " outside [0, 1]";
    throw Error("vorticity", ErrorKind::Domain, os.str());
  }
  return std::clamp(p, 0.0, 1.0);
}

double VorticityModel::omega(double p) const { return horner(coeffs_, checked(p, "omega")); }

double VorticityModel::omega_prime(double p) const {
  p = checked(p, "omega_prime");
  double v = 0.0;
  for (std::size_t k = coeffs_.size(); k-- > 1;) v = v * p + static_cast<double>(k) * coeffs_[k];
  return v;
}

double VorticityModel::capital_omega(double tau) const {
  return horner(antideriv_, checked(tau, "capital_omega"));
}

double VorticityModel::omega_deficit(double tau) const {
  tau = checked(tau, "omega_deficit");
  std::size_t best = 0;
  for (std::size_t i = 1; i < argmax_.size(); ++i) {
    if (std::abs(argmax_[i] - tau) < std::abs(argmax_[best] - tau)) best = i;
  }
  const double x = tau - argmax_[best];
  const double shifted = horner(shifted_[best], x);
  // shifted = Omega(tau) - Omega(t0); t0 attains the maximum.
  const double base = horner(antideriv_, argmax_[best]);
  return std::max(0.0, (max_omega_cap_ - base) - shifted);
}

double VorticityModel::gap(double s, double tau) const {
  return (s - s0_) * (s + s0_) + 2.0 * omega_deficit(tau);
}

std::string VorticityModel::describe() const {
  std::ostringstream os;
  os << "omega = [";
  for (std::size_t k = 0; k < coeffs_.size(); ++k) os << (k ? ", " : "") << coeffs_[k];
  os << "]";
  return os.str();
}

Classification classify(const VorticityModel& model) {
  return {model.case_tag(), model.s0(), model.omega0()};
}

}  // namespace wavebranch

#include "wavebranch/sweeps.hpp"

#include <exception>
#include <functional>

#include "wavebranch/dispersion.hpp"

namespace wavebranch {
namespace {

// Runs f(i) for i in [0, n); the first exception (by index) is rethrown.
template <class T>
std::vector<T> map_indices(int n, Exec exec, const std::function<T(int)>& f) {
  std::vector<T> out(n);
  std::vector<std::exception_ptr> err(n);
#pragma omp parallel for if (exec == Exec::Parallel) num_threads(thread_cap()) schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    try {
      out[i] = f(i);
    } catch (...) {
      err[i] = std::current_exception();
    }
  }
  for (auto& e : err)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace

std::vector<StreamRow> stream_sweep(const VorticityModel& model, const std::vector<double>& s_list,
                                    Exec exec, int n_samples) {
  return map_indices<StreamRow>(static_cast<int>(s_list.size()), exec, [&](int i) {
    const auto st = solve_stream(model, s_list[i], n_samples);
    return StreamRow{st.s(), st.d(), st.R(), st.F(), st.kappa(), st.rho0()};
  });
}

std::vector<double> sigma_sweep(const StreamSolution& stream, const std::vector<double>& taus,
                                Exec exec) {
  return map_indices<double>(static_cast<int>(taus.size()), exec,
                             [&](int i) { return sigma(stream, taus[i]); });
}

std::vector<FroudeReport> froude_sweep(const VorticityModel& model,
                                       const std::vector<double>& s_list, Exec exec) {
  return map_indices<FroudeReport>(static_cast<int>(s_list.size()), exec, [&](int i) {
    return froude(solve_stream(model, s_list[i]));
  });
}

std::vector<SlopeRow> bernoulli_slope_sweep(const VorticityModel& model,
                                            const std::vector<double>& s_list, Exec exec) {
  return map_indices<SlopeRow>(static_cast<int>(s_list.size()), exec, [&](int i) {
    const double s = s_list[i], h = 1e-5;
    const double dR = (bernoulli(model, s + h) - bernoulli(model, s - h)) / (2 * h);
    const double F = solve_stream(model, s).F();
    const double rhs = s * (1 - 1 / (F * F));
    return SlopeRow{s, dR, rhs, dR - rhs};
  });
}

}  // namespace wavebranch

#pragma once

#include <vector>

#include "wavebranch/exec.hpp"
#include "wavebranch/stream.hpp"

namespace wavebranch {

/// One uniform stream per row, as emitted by the `stream` command.
struct StreamRow {
  double s, d, R, F, kappa, rho0;
};

std::vector<StreamRow> stream_sweep(const VorticityModel& model, const std::vector<double>& s_list,
                                    Exec exec = Exec::Parallel, int n_samples = 512);

std::vector<double> sigma_sweep(const StreamSolution& stream, const std::vector<double>& taus,
                                Exec exec = Exec::Parallel);

std::vector<FroudeReport> froude_sweep(const VorticityModel& model,
                                       const std::vector<double>& s_list,
                                       Exec exec = Exec::Parallel);

/// R'(s) by central difference (h = 1e-5) against s (1 - F^-2).
struct SlopeRow {
  double s, dR_ds, rhs, defect;
};

std::vector<SlopeRow> bernoulli_slope_sweep(const VorticityModel& model,
                                            const std::vector<double>& s_list,
                                            Exec exec = Exec::Parallel);

}  // namespace wavebranch

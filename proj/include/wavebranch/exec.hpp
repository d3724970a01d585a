#pragma once

namespace wavebranch {

/// Execution mode of kernels that have both a serial reference and an OpenMP version.
enum class Exec { Serial, Parallel };

/// Thread cap for parallel kernels: WAVEBRANCH_THREADS when set and positive,
/// otherwise the OpenMP default.
int thread_cap();

}  // namespace wavebranch

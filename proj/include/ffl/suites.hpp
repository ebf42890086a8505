#pragma once

#include <vector>

#include "ffl/dense_matrix.hpp"
#include "ffl/report.hpp"

namespace ffl {

/// Executes every (n, trial) cell of the configuration. Inputs are generated
/// from child seeds derived purely from (seed, n, trial), so reports are
/// deterministic and independent of execution order; a failing trial never
/// aborts the run, it is recorded with its child seed instead.
SuiteReport run_suite(const SuiteConfig& config);

/// Re-runs one trial from its child seed (the value carried by failure
/// records), bypassing the derivation.
std::vector<TrialRecord> run_single_trial(Suite suite, int n, int trial_index,
                                          std::uint64_t child, double tol, double cond_bound);

/// Runs the applicable checks of a suite on a fixed input matrix.
std::vector<TrialRecord> run_fixture_trial(Suite suite, const DenseMatrix& x, double tol);

}  // namespace ffl

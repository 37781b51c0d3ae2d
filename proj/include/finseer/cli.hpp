#pragma once

#include <iosfwd>

namespace finseer {

// Entry point for the finseer command-line tool. Subcommands:
//   hurst     R/S predictability analysis of the open-price series
//   train     fit an MLP or TDRNN forecaster, save model + curve.csv
//   predict   run a saved model over the test region, save predictions.csv
//   evaluate  predictions.csv plus MSE / RMSE% / MAPE / regression metrics
//   compare   train both architectures, save comparison.csv
//   fetch     download a CSV over HTTP into the output directory
// Returns the process exit status; diagnostics go to err.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace finseer

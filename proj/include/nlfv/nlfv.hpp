#pragma once

// Umbrella header for the non-local finite-volume solver library.

#include "rational.hpp"    // exact cell widths
#include "errors.hpp"      // error taxonomy
#include "state.hpp"       // cell averages + clock
#include "mesh.hpp"        // grids, time grids, initial data
#include "kernel.hpp"      // look-ahead kernel discretization
#include "model.hpp"       // speed laws and CFL bounds
#include "scheme.hpp"      // non-local upwind scheme
#include "godunov.hpp"     // local Godunov comparison scheme
#include "report.hpp"      // run reports
#include "diagnostics.hpp" // errors, orders, entropy residuals
#include "experiments.hpp" // canned studies
#include "csv.hpp"         // text output
#include "config.hpp"      // JSON run configuration

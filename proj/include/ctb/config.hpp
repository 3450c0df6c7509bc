#pragma once

namespace ctb {

// Numeric knobs shared across the library. Every field has a sane default;
// the CLI can override them per run.
struct Tolerances {
  double cholesky_pivot = 1e-12;    // relative to trace/n
  double jacobi_offdiag = 1e-12;    // relative to Frobenius norm
  int jacobi_max_sweeps = 100;
  double membership = 1e-9;         // cone membership
  double dykstra_step = 1e-10;      // successive-iterate distance
  int dykstra_cap = 100000;
  double kkt = 1e-8;                // projected-gradient stopping
  int iter_cap = 100000;
  double region_membership = 1e-7;  // blocker-region membership
};

}  // namespace ctb

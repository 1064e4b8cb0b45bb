#pragma once

#include <Eigen/Core>
#include <optional>

#include "nedmp/instance.hpp"

namespace nedmp {

// Message state at one timestep: per-edge theta (probability the infection
// has not crossed the edge), phi (same, and the source is currently
// infected), the cavity susceptibility of the source, and node marginals.
struct DmpState {
  Eigen::ArrayXd theta, phi, ps_cavity;  // indexed by directed edge
  Eigen::ArrayXd ps, pi, pr;             // indexed by node
  int t = 0;
};

DmpState dmp_init(const Instance& inst);

// One update from t-1 to t. Order matters: theta first, then the cavity
// products it feeds, then phi from the cavity decrement, then marginals.
DmpState dmp_step(const DmpState& state, const Instance& inst);

struct DmpOptions {
  // When set, message updates stop once max|d theta| < tol and the remaining
  // steps iterate only the node recursion at the fixed point.
  std::optional<double> convergence_tol;
};

MarginalTrajectory dmp_run(const Instance& inst, const DmpOptions& opts = {});

}  // namespace nedmp

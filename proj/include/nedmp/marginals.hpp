#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <string>

namespace nedmp {

// Per-node state probabilities for t = 0..T; row t holds every node at time t.
struct MarginalTrajectory {
  Eigen::ArrayXXd ps, pi, pr;  // (T+1) x n

  static MarginalTrajectory zeros(int horizon, int nodes);

  int horizon() const { return int(ps.rows()) - 1; }
  int node_count() const { return int(ps.cols()); }

  bool allclose(const MarginalTrajectory& o, double tol) const;
  bool operator==(const MarginalTrajectory& o) const;
};

// CSV with header `t,node,ps,pi,pr`, one row per (t, node), 6 decimal places.
// A non-empty provenance string is emitted first as a `#` comment line.
void write_marginals_csv(std::ostream& os, const MarginalTrajectory& m,
                         const std::string& provenance = "");
MarginalTrajectory read_marginals_csv(std::istream& is);

}  // namespace nedmp

#include "nedmp/marginals.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "nedmp/errors.hpp"

namespace nedmp {

MarginalTrajectory MarginalTrajectory::zeros(int horizon, int nodes) {
  MarginalTrajectory m;
  m.ps = Eigen::ArrayXXd::Zero(horizon + 1, nodes);
  m.pi = Eigen::ArrayXXd::Zero(horizon + 1, nodes);
  m.pr = Eigen::ArrayXXd::Zero(horizon + 1, nodes);
  return m;
}

bool MarginalTrajectory::allclose(const MarginalTrajectory& o, double tol) const {
  if (ps.rows() != o.ps.rows() || ps.cols() != o.ps.cols()) return false;
  return (ps - o.ps).abs().maxCoeff() <= tol && (pi - o.pi).abs().maxCoeff() <= tol &&
         (pr - o.pr).abs().maxCoeff() <= tol;
}

bool MarginalTrajectory::operator==(const MarginalTrajectory& o) const {
  return ps.rows() == o.ps.rows() && ps.cols() == o.ps.cols() && (ps == o.ps).all() &&
         (pi == o.pi).all() && (pr == o.pr).all();
}

void write_marginals_csv(std::ostream& os, const MarginalTrajectory& m,
                         const std::string& provenance) {
  if (!provenance.empty()) os << "# " << provenance << "\n";
  os << "t,node,ps,pi,pr\n";
  char buf[128];
  for (int t = 0; t <= m.horizon(); ++t) {
    for (int i = 0; i < m.node_count(); ++i) {
      std::snprintf(buf, sizeof(buf), "%d,%d,%.6f,%.6f,%.6f\n", t, i, m.ps(t, i), m.pi(t, i),
                    m.pr(t, i));
      os << buf;
    }
  }
}

MarginalTrajectory read_marginals_csv(std::istream& is) {
  std::string line;
  std::vector<std::array<double, 5>> rows;
  int max_t = -1, max_node = -1;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 't') continue;
    std::array<double, 5> row{};
    std::istringstream ls(line);
    std::string field;
    for (int k = 0; k < 5; ++k) {
      if (!std::getline(ls, field, ',')) throw DataError("marginals csv: short row: " + line);
      row[k] = std::stod(field);
    }
    max_t = std::max(max_t, int(row[0]));
    max_node = std::max(max_node, int(row[1]));
    rows.push_back(row);
  }
  if (rows.empty()) throw DataError("marginals csv: no data rows");
  MarginalTrajectory m = MarginalTrajectory::zeros(max_t, max_node + 1);
  for (const auto& r : rows) {
    const int t = int(r[0]), i = int(r[1]);
    m.ps(t, i) = r[2];
    m.pi(t, i) = r[3];
    m.pr(t, i) = r[4];
  }
  return m;
}

}  // namespace nedmp

#include "nedmp/dmp.hpp"

#include <algorithm>
#include <vector>

namespace nedmp {

namespace {

// For every node v: node_prod[v] = prod of theta over in_edges(v);
// for every edge e = (v -> i): cavity_prod[e] = the same product over
// in_edges(v) with the reverse edge (i -> v) left out. Prefix/suffix
// products, no division, so a theta of exactly zero is handled.
void in_products(const Graph& g, const Eigen::ArrayXd& theta, Eigen::ArrayXd& node_prod,
                 Eigen::ArrayXd& cavity_prod) {
  std::vector<double> pref, suf;
  for (int v = 0; v < g.node_count(); ++v) {
    const std::vector<int>& in = g.in_edges(v);
    const int d = int(in.size());
    pref.assign(d + 1, 1.0);
    suf.assign(d + 1, 1.0);
    for (int k = 0; k < d; ++k) pref[k + 1] = pref[k] * theta[in[k]];
    for (int k = d - 1; k >= 0; --k) suf[k] = theta[in[k]] * suf[k + 1];
    node_prod[v] = pref[d];
    for (int e : g.out_edges(v)) {
      const int rev = g.reverse_edge(e);
      if (rev < 0) {
        cavity_prod[e] = pref[d];
      } else {
        const int pos = g.in_position(rev);
        cavity_prod[e] = pref[pos] * suf[pos + 1];
      }
    }
  }
}

Eigen::ArrayXd initial_ps(const Instance& inst) {
  Eigen::ArrayXd ps0 = Eigen::ArrayXd::Ones(inst.graph.node_count());
  for (int seed : inst.seeds) ps0[seed] = 0.0;
  return ps0;
}

}  // namespace

DmpState dmp_init(const Instance& inst) {
  const Graph& g = inst.graph;
  const int m = g.edge_count();
  DmpState s;
  s.t = 0;
  s.theta = Eigen::ArrayXd::Ones(m);
  s.phi = Eigen::ArrayXd::Zero(m);
  s.ps = initial_ps(inst);
  s.pi = 1.0 - s.ps;
  s.pr = Eigen::ArrayXd::Zero(g.node_count());
  s.ps_cavity = Eigen::ArrayXd::Zero(m);
  for (int e = 0; e < m; ++e) {
    s.phi[e] = inst.is_seed(g.edge(e).src) ? 1.0 : 0.0;
    s.ps_cavity[e] = s.ps[g.edge(e).src];  // all theta are 1 at t = 0
  }
  return s;
}

DmpState dmp_step(const DmpState& state, const Instance& inst) {
  const Graph& g = inst.graph;
  const int m = g.edge_count();
  const Eigen::ArrayXd ps0 = initial_ps(inst);

  DmpState next;
  next.t = state.t + 1;

  next.theta.resize(m);
  for (int e = 0; e < m; ++e) {
    next.theta[e] =
        std::clamp(state.theta[e] - g.edge(e).beta * state.phi[e], 0.0, 1.0);
  }

  Eigen::ArrayXd node_prod(g.node_count()), cavity_prod(m);
  in_products(g, next.theta, node_prod, cavity_prod);

  next.ps_cavity.resize(m);
  next.phi.resize(m);
  for (int e = 0; e < m; ++e) {
    const DirectedEdge& de = g.edge(e);
    next.ps_cavity[e] = ps0[de.src] * cavity_prod[e];
    const double keep = (1.0 - de.beta) * (1.0 - g.gamma()[de.src]);
    next.phi[e] = std::clamp(
        keep * state.phi[e] + (state.ps_cavity[e] - next.ps_cavity[e]), 0.0, 1.0);
  }

  next.ps = ps0 * node_prod;
  next.pr = state.pr + Eigen::Map<const Eigen::ArrayXd>(g.gamma().data(), g.node_count()) * state.pi;
  next.pi = 1.0 - next.pr - next.ps;
  return next;
}

MarginalTrajectory dmp_run(const Instance& inst, const DmpOptions& opts) {
  const int n = inst.graph.node_count();
  const int T = inst.horizon;
  MarginalTrajectory out = MarginalTrajectory::zeros(T, n);
  DmpState s = dmp_init(inst);
  auto store = [&](const DmpState& st) {
    out.ps.row(st.t) = st.ps.transpose();
    out.pi.row(st.t) = st.pi.transpose();
    out.pr.row(st.t) = st.pr.transpose();
  };
  store(s);
  const Eigen::Map<const Eigen::ArrayXd> gamma(inst.graph.gamma().data(), n);
  bool converged = false;
  for (int t = 1; t <= T; ++t) {
    if (!converged) {
      DmpState next = dmp_step(s, inst);
      if (opts.convergence_tol &&
          (next.theta - s.theta).abs().maxCoeff() < *opts.convergence_tol) {
        converged = true;
      }
      s = std::move(next);
      store(s);
    } else {
      // Messages are at their fixed point; only the node recursion moves.
      Eigen::ArrayXd pr = s.pr + gamma * s.pi;
      s.pr = pr;
      s.pi = 1.0 - s.pr - s.ps;
      s.t = t;
      store(s);
    }
  }
  return out;
}

}  // namespace nedmp

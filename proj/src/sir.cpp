#include "nedmp/sir.hpp"

#include <thread>

#include "nedmp/errors.hpp"

namespace nedmp {

namespace {

void init_states(const Instance& inst, std::vector<SirState>& s) {
  s.assign(inst.graph.node_count(), SirState::S);
  for (int seed : inst.seeds) s[seed] = SirState::I;
}

// Advances `cur` one synchronous step into `next`. Returns the number of
// infected nodes in `next`.
int step_states(const Instance& inst, const std::vector<SirState>& cur,
                std::vector<SirState>& next, Rng& rng) {
  const Graph& g = inst.graph;
  int infected = 0;
  for (int i = 0; i < g.node_count(); ++i) {
    switch (cur[i]) {
      case SirState::S: {
        double escape = 1.0;
        for (int e : g.in_edges(i)) {
          if (cur[g.edge(e).src] == SirState::I) escape *= 1.0 - g.edge(e).beta;
        }
        if (escape < 1.0 && rng.bernoulli(1.0 - escape)) {
          next[i] = SirState::I;
          ++infected;
        } else {
          next[i] = SirState::S;
        }
        break;
      }
      case SirState::I:
        if (rng.bernoulli(g.gamma()[i])) {
          next[i] = SirState::R;
        } else {
          next[i] = SirState::I;
          ++infected;
        }
        break;
      case SirState::R: next[i] = SirState::R; break;
    }
  }
  return infected;
}

using Counts = std::vector<std::int64_t>;  // (T+1) x n x 3, row-major

inline void count_state(Counts& counts, int n, int t, const std::vector<SirState>& s) {
  std::int64_t* row = counts.data() + std::size_t(t) * n * 3;
  for (int i = 0; i < n; ++i) row[i * 3 + int(s[i])] += 1;
}

void run_and_count(const Instance& inst, Rng& rng, Counts& counts, bool stop_when_extinct) {
  const int n = inst.graph.node_count();
  const int T = inst.horizon;
  std::vector<SirState> cur, next(n);
  init_states(inst, cur);
  count_state(counts, n, 0, cur);
  for (int t = 1; t <= T; ++t) {
    const int infected = step_states(inst, cur, next, rng);
    cur.swap(next);
    count_state(counts, n, t, cur);
    if (stop_when_extinct && infected == 0) {
      for (int rest = t + 1; rest <= T; ++rest) count_state(counts, n, rest, cur);
      break;
    }
  }
}

}  // namespace

StateTrajectory simulate_once(const Instance& inst, Rng& rng) {
  const int n = inst.graph.node_count();
  const int T = inst.horizon;
  StateTrajectory traj;
  traj.node_count = n;
  traj.states.resize(std::size_t(T + 1) * n);
  std::vector<SirState> cur, next(n);
  init_states(inst, cur);
  std::copy(cur.begin(), cur.end(), traj.states.begin());
  for (int t = 1; t <= T; ++t) {
    step_states(inst, cur, next, rng);
    cur.swap(next);
    std::copy(cur.begin(), cur.end(), traj.states.begin() + std::size_t(t) * n);
  }
  return traj;
}

MarginalTrajectory estimate_marginals(const Instance& inst, std::int64_t n_runs,
                                      std::uint64_t seed, const McOptions& opts) {
  if (n_runs < 1) throw DataError("estimate_marginals needs n_runs >= 1");
  const int n = inst.graph.node_count();
  const int T = inst.horizon;
  const std::size_t cells = std::size_t(T + 1) * n * 3;

  int threads = opts.threads;
  if (threads == 0) threads = int(std::thread::hardware_concurrency());
  threads = std::max(1, std::min<int>(threads, int(std::min<std::int64_t>(n_runs, 64))));

  std::vector<Counts> partial(threads, Counts(cells, 0));
  auto worker = [&](int k) {
    // Runs are striped over threads; each run has its own substream, so the
    // totals are independent of the thread count.
    for (std::int64_t r = k; r < n_runs; r += threads) {
      Rng rng(seed, std::uint64_t(r));
      run_and_count(inst, rng, partial[k], opts.stop_when_extinct);
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int k = 0; k < threads; ++k) pool.emplace_back(worker, k);
    for (auto& th : pool) th.join();
  }
  Counts total(cells, 0);
  for (const Counts& p : partial)
    for (std::size_t c = 0; c < cells; ++c) total[c] += p[c];

  MarginalTrajectory m = MarginalTrajectory::zeros(T, n);
  const double inv = 1.0 / double(n_runs);
  for (int t = 0; t <= T; ++t) {
    for (int i = 0; i < n; ++i) {
      const std::int64_t* cell = total.data() + (std::size_t(t) * n + i) * 3;
      m.ps(t, i) = double(cell[0]) * inv;
      m.pi(t, i) = double(cell[1]) * inv;
      m.pr(t, i) = 1.0 - m.ps(t, i) - m.pi(t, i);  // rows sum to exactly 1
    }
  }
  return m;
}

}  // namespace nedmp

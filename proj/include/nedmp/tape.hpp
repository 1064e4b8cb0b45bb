#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <functional>
#include <vector>

namespace nedmp::ad {

class Tape;

// Handle to a value recorded on a Tape. Cheap to copy; valid while the tape
// lives.
class Var {
 public:
  Var() = default;
  const Eigen::MatrixXd& value() const;
  Eigen::Index rows() const { return value().rows(); }
  Eigen::Index cols() const { return value().cols(); }
  Tape* tape() const { return tape_; }
  int index() const { return idx_; }
  bool valid() const { return tape_ != nullptr; }

 private:
  friend class Tape;
  Var(Tape* t, int i) : tape_(t), idx_(i) {}
  Tape* tape_ = nullptr;
  int idx_ = -1;
};

// CSR-style grouping of element indices; group g owns members
// [offsets[g], offsets[g+1]). Used for grouped products over edge messages.
struct GroupedIndex {
  std::vector<int> offsets;
  std::vector<int> members;

  int groups() const { return int(offsets.size()) - 1; }
  static GroupedIndex from_lists(const std::vector<std::vector<int>>& lists);
};

// Records a forward computation over dense matrices and replays it in
// reverse for gradients. Not copyable: op closures capture `this`.
class Tape {
 public:
  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  // Leaf with no gradient flow.
  Var constant(Eigen::MatrixXd value);
  // Leaf whose gradient is accumulated into *grad_sink on backward().
  Var leaf(const Eigen::MatrixXd& value, Eigen::MatrixXd* grad_sink);

  // Reverse sweep from a 1x1 loss. May be called repeatedly; external
  // gradient sinks accumulate across calls.
  void backward(Var loss);

  const Eigen::MatrixXd& value(Var v) const { return nodes_[v.idx_].value; }
  // Gradient of the last backward() for a node on the path; empty-shaped
  // zero matrix if the node was never reached.
  Eigen::MatrixXd grad(Var v) const;

  bool grad_enabled() const { return grad_enabled_; }
  void set_grad_enabled(bool on) { grad_enabled_ = on; }
  std::size_t size() const { return nodes_.size(); }

  // --- below: plumbing for op implementations ---
  using Pull = std::function<void(const Eigen::MatrixXd&)>;
  int push(Eigen::MatrixXd value, bool needs_grad);
  void set_pull(int idx, Pull pull);
  void add_grad(int idx, const Eigen::MatrixXd& g);
  bool needs_grad(Var v) const { return nodes_[v.idx_].needs_grad; }
  Var handle(int idx) { return Var(this, idx); }
  const Eigen::MatrixXd& value_at(int idx) const { return nodes_[idx].value; }

 private:
  struct Node {
    Eigen::MatrixXd value;
    Eigen::MatrixXd grad;  // empty until reached by backward
    Pull pull;
    Eigen::MatrixXd* external = nullptr;
    bool needs_grad = false;
  };
  std::vector<Node> nodes_;
  bool grad_enabled_ = true;
};

// --- recorded operations ---

Var matmul(Var a, Var b);
Var operator+(Var a, Var b);
Var operator-(Var a, Var b);
Var mul(Var a, Var b);  // elementwise
Var affine(Var a, double scale, double shift);
inline Var operator*(double s, Var a) { return affine(a, s, 0.0); }
Var add_bias(Var m, Var row);  // broadcast a 1 x C row over every row of m
Var concat_cols(Var a, Var b);
Var slice_cols(Var a, int first, int count);
Var relu(Var a);
Var sigmoid(Var a);
Var tanh(Var a);
Var softmax_rows(Var a);
Var log_floored(Var a, double floor);
Var sum(Var a);  // 1x1
Var cwise_min(Var a, Var b);
// Clamp to [0,1] with pass-through gradient inside the interval (inclusive),
// zero outside.
Var clamp_unit(Var a);
// Constant sparse matrix times recorded dense matrix. `s` must outlive the
// tape.
Var spmm(const Eigen::SparseMatrix<double>& s, Var x);
// out[g] = prod over members of group g of values (a column vector); empty
// groups give 1. `groups` must outlive the tape.
Var group_product(Var values, const GroupedIndex& groups);

}  // namespace nedmp::ad

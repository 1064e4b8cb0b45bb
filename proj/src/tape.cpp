#include "nedmp/tape.hpp"

#include "nedmp/errors.hpp"

namespace nedmp::ad {

const Eigen::MatrixXd& Var::value() const {
  if (!tape_) throw DataError("use of an empty Var");
  return tape_->value(*this);
}

GroupedIndex GroupedIndex::from_lists(const std::vector<std::vector<int>>& lists) {
  GroupedIndex g;
  g.offsets.reserve(lists.size() + 1);
  g.offsets.push_back(0);
  for (const auto& l : lists) {
    g.members.insert(g.members.end(), l.begin(), l.end());
    g.offsets.push_back(int(g.members.size()));
  }
  return g;
}

int Tape::push(Eigen::MatrixXd value, bool needs_grad) {
  Node node;
  node.value = std::move(value);
  node.needs_grad = needs_grad && grad_enabled_;
  nodes_.push_back(std::move(node));
  return int(nodes_.size()) - 1;
}

void Tape::set_pull(int idx, Pull pull) { nodes_[idx].pull = std::move(pull); }

void Tape::add_grad(int idx, const Eigen::MatrixXd& g) {
  Node& node = nodes_[idx];
  if (!node.needs_grad) return;
  if (node.grad.size() == 0) {
    node.grad = g;
  } else {
    node.grad += g;
  }
}

Var Tape::constant(Eigen::MatrixXd value) { return handle(push(std::move(value), false)); }

Var Tape::leaf(const Eigen::MatrixXd& value, Eigen::MatrixXd* grad_sink) {
  const int idx = push(value, grad_sink != nullptr);
  nodes_[idx].external = grad_sink;
  return handle(idx);
}

void Tape::backward(Var loss) {
  if (!loss.valid() || loss.tape() != this) throw DataError("backward: loss not on this tape");
  if (nodes_.empty()) throw DataError("backward: nothing recorded");
  if (value(loss).rows() != 1 || value(loss).cols() != 1)
    throw DataError("backward: loss must be 1x1");
  // Clear transient grads from any previous sweep; external sinks keep
  // accumulating across sweeps.
  for (Node& node : nodes_) node.grad.resize(0, 0);
  add_grad(loss.index(), Eigen::MatrixXd::Ones(1, 1));
  for (int idx = loss.index(); idx >= 0; --idx) {
    Node& node = nodes_[idx];
    if (node.grad.size() == 0) continue;
    if (node.external) {
      if (node.external->size() == 0) {
        *node.external = node.grad;
      } else {
        *node.external += node.grad;
      }
    }
    if (node.pull) node.pull(node.grad);
  }
}

Eigen::MatrixXd Tape::grad(Var v) const {
  const Node& node = nodes_[v.index()];
  if (node.grad.size() == 0) return Eigen::MatrixXd::Zero(node.value.rows(), node.value.cols());
  return node.grad;
}

namespace {

Tape* own_tape(Var a) {
  if (!a.valid()) throw DataError("operation on an empty Var");
  return a.tape();
}

Tape* same_tape(Var a, Var b) {
  if (!a.valid() || !b.valid() || a.tape() != b.tape())
    throw DataError("operands recorded on different tapes");
  return a.tape();
}

void check_same_shape(Var a, Var b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DataError(std::string(op) + ": shape mismatch");
}

}  // namespace

Var matmul(Var a, Var b) {
  Tape* t = same_tape(a, b);
  if (a.cols() != b.rows()) throw DataError("matmul: inner dimensions differ");
  const bool ng = t->needs_grad(a) || t->needs_grad(b);
  const int idx = t->push(a.value() * b.value(), ng);
  if (ng) {
    const int ia = a.index(), ib = b.index();
    t->set_pull(idx, [t, ia, ib](const Eigen::MatrixXd& g) {
      t->add_grad(ia, g * t->value_at(ib).transpose());
      t->add_grad(ib, t->value_at(ia).transpose() * g);
    });
  }
  return t->handle(idx);
}

Var operator+(Var a, Var b) {
  Tape* t = same_tape(a, b);
  check_same_shape(a, b, "add");
  const bool ng = t->needs_grad(a) || t->needs_grad(b);
  const int idx = t->push(a.value() + b.value(), ng);
  if (ng) {
    const int ia = a.index(), ib = b.index();
    t->set_pull(idx, [t, ia, ib](const Eigen::MatrixXd& g) {
      t->add_grad(ia, g);
      t->add_grad(ib, g);
    });
  }
  return t->handle(idx);
}

Var operator-(Var a, Var b) {
  Tape* t = same_tape(a, b);
  check_same_shape(a, b, "sub");
  const bool ng = t->needs_grad(a) || t->needs_grad(b);
  const int idx = t->push(a.value() - b.value(), ng);
  if (ng) {
    const int ia = a.index(), ib = b.index();
    t->set_pull(idx, [t, ia, ib](const Eigen::MatrixXd& g) {
      t->add_grad(ia, g);
      t->add_grad(ib, -g);
    });
  }
  return t->handle(idx);
}

Var mul(Var a, Var b) {
  Tape* t = same_tape(a, b);
  check_same_shape(a, b, "mul");
  const bool ng = t->needs_grad(a) || t->needs_grad(b);
  const int idx = t->push(a.value().cwiseProduct(b.value()), ng);
  if (ng) {
    const int ia = a.index(), ib = b.index();
    t->set_pull(idx, [t, ia, ib](const Eigen::MatrixXd& g) {
      t->add_grad(ia, g.cwiseProduct(t->value_at(ib)));
      t->add_grad(ib, g.cwiseProduct(t->value_at(ia)));
    });
  }
  return t->handle(idx);
}

Var affine(Var a, double scale, double shift) {
  Tape* t = own_tape(a);
  const bool ng = t->needs_grad(a);
  const int idx = t->push((scale * a.value().array() + shift).matrix(), ng);
  if (ng) {
    const int ia = a.index();
    t->set_pull(idx,
                [t, ia, scale](const Eigen::MatrixXd& g) { t->add_grad(ia, scale * g); });
  }
  return t->handle(idx);
}

Var add_bias(Var m, Var row) {
  Tape* t = same_tape(m, row);
  if (row.rows() != 1 || row.cols() != m.cols()) throw DataError("add_bias: bias shape mismatch");
  const bool ng = t->needs_grad(m) || t->needs_grad(row);
  Eigen::MatrixXd out = m.value();
  out.rowwise() += row.value().row(0);
  const int idx = t->push(std::move(out), ng);
  if (ng) {
    const int im = m.index(), ir = row.index();
    t->set_pull(idx, [t, im, ir](const Eigen::MatrixXd& g) {
      t->add_grad(im, g);
      t->add_grad(ir, g.colwise().sum());
    });
  }
  return t->handle(idx);
}

Var concat_cols(Var a, Var b) {
  Tape* t = same_tape(a, b);
  if (a.rows() != b.rows()) throw DataError("concat_cols: row counts differ");
  Eigen::MatrixXd out(a.rows(), a.cols() + b.cols());
  out.leftCols(a.cols()) = a.value();
  out.rightCols(b.cols()) = b.value();
  const bool ng = t->needs_grad(a) || t->needs_grad(b);
  const int idx = t->push(std::move(out), ng);
  if (ng) {
    const int ia = a.index(), ib = b.index();
    const int ca = int(a.cols()), cb = int(b.cols());
    t->set_pull(idx, [t, ia, ib, ca, cb](const Eigen::MatrixXd& g) {
      t->add_grad(ia, g.leftCols(ca));
      t->add_grad(ib, g.rightCols(cb));
    });
  }
  return t->handle(idx);
}

Var slice_cols(Var a, int first, int count) {
  Tape* t = own_tape(a);
  if (first < 0 || count < 0 || first + count > a.cols())
    throw DataError("slice_cols: out of range");
  const bool ng = t->needs_grad(a);
  const int idx = t->push(a.value().middleCols(first, count), ng);
  if (ng) {
    const int ia = a.index();
    const int rows = int(a.rows()), cols = int(a.cols());
    t->set_pull(idx, [t, ia, first, count, rows, cols](const Eigen::MatrixXd& g) {
      Eigen::MatrixXd da = Eigen::MatrixXd::Zero(rows, cols);
      da.middleCols(first, count) = g;
      t->add_grad(ia, da);
    });
  }
  return t->handle(idx);
}

Var relu(Var a) {
  Tape* t = own_tape(a);
  const bool ng = t->needs_grad(a);
  const int idx = t->push(a.value().cwiseMax(0.0), ng);
  if (ng) {
    const int ia = a.index();
    t->set_pull(idx, [t, ia](const Eigen::MatrixXd& g) {
      t->add_grad(
          ia, (t->value_at(ia).array() > 0.0).select(g.array(), 0.0).matrix());
    });
  }
  return t->handle(idx);
}

Var sigmoid(Var a) {
  Tape* t = own_tape(a);
  const bool ng = t->needs_grad(a);
  Eigen::MatrixXd out = (1.0 / (1.0 + (-a.value().array()).exp())).matrix();
  const int idx = t->push(std::move(out), ng);
  if (ng) {
    const int ia = a.index();
    t->set_pull(idx, [t, ia, idx](const Eigen::MatrixXd& g) {
      const auto& y = t->value_at(idx).array();
      t->add_grad(ia, (g.array() * y * (1.0 - y)).matrix());
    });
  }
  return t->handle(idx);
}

Var tanh(Var a) {
  Tape* t = own_tape(a);
  const bool ng = t->needs_grad(a);
  const int idx = t->push(a.value().array().tanh().matrix(), ng);
  if (ng) {
    const int ia = a.index();
    t->set_pull(idx, [t, ia, idx](const Eigen::MatrixXd& g) {
      const auto& y = t->value_at(idx).array();
      t->add_grad(ia, (g.array() * (1.0 - y * y)).matrix());
    });
  }
  return t->handle(idx);
}

Var softmax_rows(Var a) {
  Tape* t = own_tape(a);
  Eigen::ArrayXXd z = a.value().array();
  z.colwise() -= z.rowwise().maxCoeff();
  Eigen::ArrayXXd e = z.exp();
  Eigen::ArrayXd norm = e.rowwise().sum();
  Eigen::MatrixXd out = (e.colwise() / norm).matrix();
  const bool ng = t->needs_grad(a);
  const int idx = t->push(std::move(out), ng);
  if (ng) {
    const int ia = a.index();
    t->set_pull(idx, [t, ia, idx](const Eigen::MatrixXd& g) {
      const Eigen::ArrayXXd y = t->value_at(idx).array();
      const Eigen::ArrayXd dot = (g.array() * y).rowwise().sum();
      t->add_grad(ia, (y * (g.array().colwise() - dot)).matrix());
    });
  }
  return t->handle(idx);
}

Var log_floored(Var a, double floor) {
  Tape* t = own_tape(a);
  const bool ng = t->needs_grad(a);
  const int idx = t->push(a.value().array().max(floor).log().matrix(), ng);
  if (ng) {
    const int ia = a.index();
    t->set_pull(idx, [t, ia, floor](const Eigen::MatrixXd& g) {
      const auto& v = t->value_at(ia).array();
      t->add_grad(ia, (v > floor).select(g.array() / v, 0.0).matrix());
    });
  }
  return t->handle(idx);
}

Var sum(Var a) {
  Tape* t = own_tape(a);
  Eigen::MatrixXd out(1, 1);
  out(0, 0) = a.value().sum();
  const bool ng = t->needs_grad(a);
  const int idx = t->push(std::move(out), ng);
  if (ng) {
    const int ia = a.index();
    const int rows = int(a.rows()), cols = int(a.cols());
    t->set_pull(idx, [t, ia, rows, cols](const Eigen::MatrixXd& g) {
      t->add_grad(ia, Eigen::MatrixXd::Constant(rows, cols, g(0, 0)));
    });
  }
  return t->handle(idx);
}

Var cwise_min(Var a, Var b) {
  Tape* t = same_tape(a, b);
  check_same_shape(a, b, "cwise_min");
  const bool ng = t->needs_grad(a) || t->needs_grad(b);
  const int idx = t->push(a.value().cwiseMin(b.value()), ng);
  if (ng) {
    const int ia = a.index(), ib = b.index();
    // Ties route the gradient to the first operand.
    t->set_pull(idx, [t, ia, ib](const Eigen::MatrixXd& g) {
      const auto& va = t->value_at(ia).array();
      const auto& vb = t->value_at(ib).array();
      t->add_grad(ia, (va <= vb).select(g.array(), 0.0).matrix());
      t->add_grad(ib, (vb < va).select(g.array(), 0.0).matrix());
    });
  }
  return t->handle(idx);
}

Var clamp_unit(Var a) {
  Tape* t = own_tape(a);
  const bool ng = t->needs_grad(a);
  const int idx = t->push(a.value().cwiseMax(0.0).cwiseMin(1.0), ng);
  if (ng) {
    const int ia = a.index();
    t->set_pull(idx, [t, ia](const Eigen::MatrixXd& g) {
      const auto& v = t->value_at(ia).array();
      t->add_grad(ia, ((v >= 0.0) && (v <= 1.0)).select(g.array(), 0.0).matrix());
    });
  }
  return t->handle(idx);
}

Var spmm(const Eigen::SparseMatrix<double>& s, Var x) {
  Tape* t = own_tape(x);
  if (s.cols() != x.rows()) throw DataError("spmm: inner dimensions differ");
  const bool ng = t->needs_grad(x);
  const int idx = t->push(s * x.value(), ng);
  if (ng) {
    const int ix = x.index();
    const Eigen::SparseMatrix<double>* sp = &s;
    t->set_pull(idx, [t, ix, sp](const Eigen::MatrixXd& g) {
      t->add_grad(ix, sp->transpose() * g);
    });
  }
  return t->handle(idx);
}

Var group_product(Var values, const GroupedIndex& groups) {
  Tape* t = own_tape(values);
  if (values.cols() != 1) throw DataError("group_product: expects a column vector");
  const Eigen::MatrixXd& v = values.value();
  Eigen::MatrixXd out(groups.groups(), 1);
  for (int g = 0; g < groups.groups(); ++g) {
    double prod = 1.0;
    for (int k = groups.offsets[g]; k < groups.offsets[g + 1]; ++k)
      prod *= v(groups.members[k], 0);
    out(g, 0) = prod;
  }
  const bool ng = t->needs_grad(values);
  const int idx = t->push(std::move(out), ng);
  if (ng) {
    const int iv = values.index();
    const GroupedIndex* gi = &groups;
    const int n = int(values.rows());
    t->set_pull(idx, [t, iv, gi, n](const Eigen::MatrixXd& g) {
      const Eigen::MatrixXd& v = t->value_at(iv);
      Eigen::MatrixXd dv = Eigen::MatrixXd::Zero(n, 1);
      std::vector<double> pref, suf;
      for (int grp = 0; grp < gi->groups(); ++grp) {
        const int begin = gi->offsets[grp], end = gi->offsets[grp + 1];
        const int d = end - begin;
        if (d == 0) continue;
        pref.assign(d + 1, 1.0);
        suf.assign(d + 1, 1.0);
        for (int k = 0; k < d; ++k) pref[k + 1] = pref[k] * v(gi->members[begin + k], 0);
        for (int k = d - 1; k >= 0; --k) suf[k] = v(gi->members[begin + k], 0) * suf[k + 1];
        for (int k = 0; k < d; ++k)
          dv(gi->members[begin + k], 0) += g(grp, 0) * pref[k] * suf[k + 1];
      }
      t->add_grad(iv, dv);
    });
  }
  return t->handle(idx);
}

}  // namespace nedmp::ad

#pragma once

#include "netwf/network.hpp"

#include <functional>
#include <optional>
#include <utility>

namespace netwf {

// Matrix-free symmetric linear operator on real k-vectors. Only the
// action on vectors is required; the operator is never formed.
class LinearOperator {
 public:
  using ApplyFn = std::function<void(const Vector&, Vector&)>;

  LinearOperator(Eigen::Index dim, ApplyFn apply)
      : dim_(dim), apply_(std::move(apply)) {}

  Eigen::Index dim() const { return dim_; }

  void apply(const Vector& x, Vector& out) const { apply_(x, out); }

  Vector operator()(const Vector& x) const {
    Vector out(dim_);
    apply_(x, out);
    return out;
  }

 private:
  Eigen::Index dim_;
  ApplyFn apply_;
};

struct CgReport {
  int iterations = 0;
  double final_relative_residual = 0.0;
  bool converged = false;
};

// Conjugate gradient for symmetric positive (semi)definite operators.
// Stops when the relative residual ||b - op(x)||/||b|| drops to tol;
// b = 0 returns x = 0 immediately. On stagnation past max_iter the best
// iterate seen is returned with converged = false. NaN/Inf in iterates
// raises NumericError. An optional preconditioner (the action of M^-1,
// itself symmetric positive definite) turns this into PCG; none is used
// by the filter in its default configuration.
std::pair<Vector, CgReport> conjugate_gradient(const LinearOperator& op, const Vector& b,
                                               double tol, int max_iter,
                                               const std::optional<Vector>& x0 = {},
                                               const LinearOperator* preconditioner = nullptr);

// L * X * R^T for square conformable matrices: the matrix-level form of
// the Kronecker identity (R (x) L) vec(X) = vec(L X R^T).
Matrix sandwich_apply(const Matrix& L, const Matrix& X, const Matrix& R);

// Column-major vectorization and its inverse.
Vector vec(const Matrix& X);
Matrix unvec(const Vector& x, Eigen::Index v);

}  // namespace netwf

#include "netwf/linalg.hpp"

#include "netwf/errors.hpp"

#include <cmath>

namespace netwf {

namespace {

bool all_finite(const Vector& x) { return x.allFinite(); }

}  // namespace

std::pair<Vector, CgReport> conjugate_gradient(const LinearOperator& op, const Vector& b,
                                               double tol, int max_iter,
                                               const std::optional<Vector>& x0,
                                               const LinearOperator* preconditioner) {
  const Eigen::Index k = op.dim();
  if (b.size() != k) throw ArgumentError("conjugate_gradient: rhs dimension mismatch");
  if (!all_finite(b)) throw NumericError("conjugate_gradient: rhs contains NaN/Inf");
  if (tol <= 0.0) throw ArgumentError("conjugate_gradient: tol must be positive");
  if (max_iter <= 0) throw ArgumentError("conjugate_gradient: max_iter must be positive");
  if (preconditioner && preconditioner->dim() != k)
    throw ArgumentError("conjugate_gradient: preconditioner dimension mismatch");

  const double b_norm = b.norm();
  CgReport report;
  if (b_norm == 0.0) {
    report.converged = true;
    return {Vector::Zero(k), report};
  }

  Vector x = x0 ? *x0 : Vector::Zero(k);
  if (x.size() != k) throw ArgumentError("conjugate_gradient: x0 dimension mismatch");

  Vector r(k);
  if (x0) {
    op.apply(x, r);
    r = b - r;
  } else {
    r = b;
  }

  Vector z(k);
  if (preconditioner) {
    preconditioner->apply(r, z);
  } else {
    z = r;
  }
  Vector p = z;
  Vector q(k);
  double rho = r.dot(z);

  double best_residual = r.norm() / b_norm;
  Vector best_x = x;

  report.final_relative_residual = best_residual;
  if (best_residual <= tol) {
    report.converged = true;
    return {x, report};
  }

  for (int iter = 1; iter <= max_iter; ++iter) {
    op.apply(p, q);
    const double pq = p.dot(q);
    if (!std::isfinite(pq)) throw NumericError("conjugate_gradient: NaN/Inf in iterates");
    if (pq == 0.0) break;  // direction annihilated; cannot progress
    const double alpha = rho / pq;
    x += alpha * p;
    r -= alpha * q;
    const double r_norm2 = r.squaredNorm();
    if (!std::isfinite(r_norm2) || !all_finite(x))
      throw NumericError("conjugate_gradient: NaN/Inf in iterates");

    const double rel = std::sqrt(r_norm2) / b_norm;
    report.iterations = iter;
    if (rel < best_residual) {
      best_residual = rel;
      best_x = x;
    }
    if (rel <= tol) {
      report.final_relative_residual = rel;
      report.converged = true;
      return {x, report};
    }
    if (preconditioner) {
      preconditioner->apply(r, z);
    } else {
      z = r;
    }
    const double rho_next = r.dot(z);
    if (!std::isfinite(rho_next))
      throw NumericError("conjugate_gradient: NaN/Inf in iterates");
    p = z + (rho_next / rho) * p;
    rho = rho_next;
  }

  report.final_relative_residual = best_residual;
  report.converged = false;
  return {best_x, report};
}

Matrix sandwich_apply(const Matrix& L, const Matrix& X, const Matrix& R) {
  const Eigen::Index v = X.rows();
  if (X.cols() != v) throw ArgumentError("sandwich_apply: X must be square");
  if (L.rows() != v || L.cols() != v || R.rows() != v || R.cols() != v)
    throw ArgumentError("sandwich_apply: dimension mismatch");
  return L * X * R.transpose();
}

Vector vec(const Matrix& X) {
  return Eigen::Map<const Vector>(X.data(), X.size());
}

Matrix unvec(const Vector& x, Eigen::Index v) {
  if (x.size() != v * v) throw ArgumentError("unvec: length is not v*v");
  return Eigen::Map<const Matrix>(x.data(), v, v);
}

}  // namespace netwf

#include "clearnet/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "clearnet/error.hpp"

namespace clearnet {

Vector solve_dense(const Matrix& a, const Vector& b) {
  if (a.rows() != a.cols() || a.rows() != b.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "linear system is " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()) + " with right-hand side of size " +
                    std::to_string(b.size()));
  }
  if (a.rows() == 0) return Vector(0);

  const Eigen::PartialPivLU<Matrix> lu(a);
  const Vector pivots = lu.matrixLU().diagonal().cwiseAbs();
  Index worst = 0;
  if (!(pivots.minCoeff(&worst) >= kPivotFloor)) {
    throw Error(ErrorCode::SingularSystem,
                "pivot " + std::to_string(pivots[worst]) +
                    " below floor; check recovery rates and the sink convention",
                worst);
  }
  return lu.solve(b);
}

double max_abs_head(const Vector& v, std::optional<Index> count) {
  const Index n = count ? std::min(*count, v.size()) : v.size();
  if (n <= 0) return 0.0;
  return v.head(n).cwiseAbs().maxCoeff();
}

Vector Rate::expand(Index n) const {
  if (per_node_) {
    if (per_node_->size() != n) {
      throw Error(ErrorCode::DimensionMismatch,
                  "per-node rate has " + std::to_string(per_node_->size()) +
                      " entries, expected " + std::to_string(n));
    }
    return *per_node_;
  }
  return Vector::Constant(n, scalar_);
}

void Rate::require_closed_unit(Index n, std::string_view name) const {
  const Vector v = expand(n);
  for (Index i = 0; i < v.size(); ++i) {
    if (!(v[i] >= 0.0 && v[i] <= 1.0)) {
      throw Error(ErrorCode::InvalidParameter,
                  std::string(name) + " must lie in [0,1], got " +
                      std::to_string(v[i]),
                  i);
    }
  }
}

void Rate::require_open_unit(Index banks, std::string_view name) const {
  if (per_node_ && per_node_->size() < banks) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(name) + " has " +
                    std::to_string(per_node_->size()) +
                    " entries, expected at least " + std::to_string(banks));
  }
  // A scalar needs checking once, even for an empty banking system.
  const Index count = per_node_ ? banks : 1;
  for (Index i = 0; i < count; ++i) {
    const double v = (*this)[i];
    if (!(v > 0.0 && v < 1.0)) {
      throw Error(ErrorCode::InvalidInterpolation,
                  std::string(name) + " must lie in (0,1), got " +
                      std::to_string(v),
                  per_node_ ? std::optional<std::ptrdiff_t>(i) : std::nullopt);
    }
  }
}

}  // namespace clearnet

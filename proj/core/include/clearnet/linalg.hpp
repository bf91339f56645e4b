#ifndef CLEARNET_LINALG_HPP
#define CLEARNET_LINALG_HPP

#include <optional>
#include <string_view>

#include <Eigen/Dense>

namespace clearnet {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Pivots smaller than this in the LU factorization are treated as singular.
inline constexpr double kPivotFloor = 1e-14;

/// Solves `a * x = b` with a dense LU factorization (partial pivoting).
/// Throws Error{SingularSystem} when a pivot magnitude drops below
/// kPivotFloor. Empty systems return an empty vector.
Vector solve_dense(const Matrix& a, const Vector& b);

/// Max-norm over the leading `count` entries; the whole vector when omitted.
double max_abs_head(const Vector& v, std::optional<Index> count = std::nullopt);

/// A recovery rate or interpolation coefficient: either one scalar shared by
/// every node or one value per node (a diagonal matrix in the algebra).
class Rate {
 public:
  Rate(double value) : scalar_(value) {}  // NOLINT: implicit on purpose
  explicit Rate(Vector per_node) : per_node_(std::move(per_node)) {}

  double operator[](Index i) const {
    return per_node_ ? (*per_node_)[i] : scalar_;
  }
  bool is_scalar() const { return !per_node_.has_value(); }
  double scalar() const { return scalar_; }
  const std::optional<Vector>& per_node() const { return per_node_; }

  /// Dense length-n vector of the diagonal.
  Vector expand(Index n) const;

  /// Throws InvalidParameter unless every value lies in [0, 1].
  void require_closed_unit(Index n, std::string_view name) const;
  /// Throws InvalidInterpolation unless every value over the first
  /// `banks` entries lies strictly inside (0, 1).
  void require_open_unit(Index banks, std::string_view name) const;

 private:
  double scalar_ = 0.0;
  std::optional<Vector> per_node_;
};

}  // namespace clearnet

#endif  // CLEARNET_LINALG_HPP

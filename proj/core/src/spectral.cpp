#include "clearnet/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "clearnet/error.hpp"

namespace clearnet {

namespace {

void require_nonnegative_square(const Matrix& c) {
  if (c.rows() != c.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix must be square");
  }
  for (Index j = 0; j < c.cols(); ++j) {
    for (Index i = 0; i < c.rows(); ++i) {
      if (!std::isfinite(c(i, j)) || c(i, j) < 0.0) {
        throw Error(ErrorCode::InvalidParameter,
                    "matrix entry (" + std::to_string(i) + ", " + std::to_string(j) +
                        ") must be finite and nonnegative",
                    i);
      }
    }
  }
}

// Strongly connected components of the digraph i -> j when c(i, j) > 0
// (Tarjan, iterative). The radius of a nonnegative matrix is the largest
// radius among its irreducible diagonal blocks.
std::vector<std::vector<Index>> strong_components(const Matrix& c) {
  const Index n = c.rows();
  std::vector<Index> index(n, -1);
  std::vector<Index> low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<Index> stack;
  std::vector<std::vector<Index>> out;
  Index counter = 0;

  for (Index root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    // Frames hold (node, next neighbour to visit).
    std::vector<std::pair<Index, Index>> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, next] = frames.back();
      bool descended = false;
      while (next < n) {
        const Index w = next++;
        if (c(v, w) <= 0.0) continue;
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
          descended = true;
          break;
        }
        if (on_stack[w]) low[v] = std::min(low[v], index[w]);
      }
      if (descended) continue;
      const Index done = v;
      frames.pop_back();
      if (!frames.empty()) {
        const Index parent = frames.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] == index[done]) {
        std::vector<Index> component;
        Index w = -1;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component.push_back(w);
        } while (w != done);
        out.push_back(std::move(component));
      }
    }
  }
  return out;
}

// Power iteration on B + I for an irreducible B: the shifted matrix is
// primitive, so its Perron root is simple and strictly dominant. For any
// positive x, min_i ((B+I)x)_i / x_i <= rho + 1 <= max_i ((B+I)x)_i / x_i, and
// the iterates squeeze this bracket onto the Perron root.
double irreducible_radius(const Matrix& b, double tol, long max_iter) {
  const Index n = b.rows();
  Vector x(n);
  for (Index i = 0; i < n; ++i) x[i] = 1.0 + 1e-9 * static_cast<double>(i + 1) / static_cast<double>(n);
  x /= x.sum();

  constexpr double kEps = std::numeric_limits<double>::epsilon();
  for (long it = 0; it < max_iter; ++it) {
    const Vector y = b * x + x;
    const Eigen::ArrayXd ratio = y.array() / x.array();
    const double lo = ratio.minCoeff();
    const double hi = ratio.maxCoeff();
    if (hi - lo <= std::max(tol, 16.0 * kEps * hi)) {
      return std::max(0.0, 0.5 * (lo + hi) - 1.0);
    }
    x = y / y.sum();
  }
  throw Error(ErrorCode::PowerIterationStall,
              "power iteration did not settle within " + std::to_string(max_iter) +
                  " steps");
}

}  // namespace

double collatz_wielandt_value(const Matrix& c, const Vector& x) {
  if (c.rows() != c.cols() || x.size() != c.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "test vector does not match the matrix");
  }
  bool any = false;
  for (Index i = 0; i < x.size(); ++i) {
    if (!(x[i] >= 0.0) || !std::isfinite(x[i])) {
      throw Error(ErrorCode::InvalidParameter,
                  "test vector entry " + std::to_string(i) + " must be nonnegative", i);
    }
    any = any || x[i] != 0.0;
  }
  if (!any) throw Error(ErrorCode::ZeroVector, "test vector is zero");

  const Vector row = c.transpose() * x;  // (x^T C)^T
  double g = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < x.size(); ++i) {
    if (x[i] != 0.0) g = std::min(g, row[i] / x[i]);
  }
  return g;
}

double spectral_radius(const Matrix& c, double tol, long max_iter) {
  require_nonnegative_square(c);
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidParameter, "tolerance must be positive");

  double rho = 0.0;
  for (const std::vector<Index>& component : strong_components(c)) {
    if (component.size() == 1) {
      rho = std::max(rho, c(component[0], component[0]));
      continue;
    }
    const auto m = static_cast<Index>(component.size());
    Matrix block(m, m);
    for (Index a = 0; a < m; ++a) {
      for (Index b = 0; b < m; ++b) block(a, b) = c(component[a], component[b]);
    }
    rho = std::max(rho, irreducible_radius(block, tol, max_iter));
  }
  return rho;
}

InvertibilityCheck check_invertibility(const Matrix& c, double r, bool has_sink) {
  if (!(r >= 0.0 && r <= 1.0)) {
    throw Error(ErrorCode::InvalidParameter, "r must lie in [0,1]");
  }
  InvertibilityCheck out;
  // Tightest tolerance the bracket allows, so a radius of exactly one is
  // never mistaken for one just below it.
  out.report.radius_estimate = spectral_radius(c, 1e-15);
  out.report.invertible_for_r = RecoveryInterval{0.0, 1.0, has_sink};
  out.invertible = r * out.report.radius_estimate < 1.0 - kInvertibilityMargin;

  const Index n = c.rows();
  if (n > 0) {
    // Nodes whose column of C is zero (the sink) always give a ratio of 0,
    // so every candidate is also tried with those coordinates cleared.
    const Vector has_claims =
        (c.colwise().sum().transpose().array() > 0.0).cast<double>().matrix();
    double best = 0.0;
    const auto consider = [&](const Vector& x) {
      best = std::max(best, collatz_wielandt_value(c, x));
      const Vector masked = x.cwiseProduct(has_claims);
      if (!masked.isZero()) best = std::max(best, collatz_wielandt_value(c, masked));
    };
    // Left power iterates approach the vector that attains the max-min; a
    // handful of seeded random vectors cover the rest.
    Vector x = Vector::Ones(n);
    Vector x_masked = has_claims;
    for (int k = 0; k < 200; ++k) {
      consider(x);
      if (!x_masked.isZero()) {
        best = std::max(best, collatz_wielandt_value(c, x_masked));
        Vector next = (c.transpose() * x_masked + x_masked).cwiseProduct(has_claims);
        if (next.sum() > 0.0) x_masked = next / next.sum();
      }
      Vector next = c.transpose() * x + x;
      x = next / next.sum();
    }
    std::mt19937_64 rng(0x5eed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int k = 0; k < 32; ++k) {
      Vector sample(n);
      for (Index i = 0; i < n; ++i) sample[i] = unit(rng);
      consider(sample);
    }
    out.report.collatz_wielandt_lower = best;
  }
  return out;
}

RadiusComparison corollary_radius_bound(const Matrix& c,
                                        const DefaultIndicator& defaults) {
  if (defaults.size() != c.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "default indicator does not match the matrix");
  }
  const Vector d = defaults.diagonal();
  const Matrix masked = d.asDiagonal() * c * d.asDiagonal();
  RadiusComparison out;
  out.full_radius = spectral_radius(c, 1e-12);
  out.masked_radius = spectral_radius(masked, 1e-12);
  out.holds = out.masked_radius <= out.full_radius + 1e-10;
  return out;
}

}  // namespace clearnet

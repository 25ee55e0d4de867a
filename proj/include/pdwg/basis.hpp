#pragma once

#include <utility>
#include <vector>

#include <Eigen/Core>

#include "pdwg/mesh.hpp"

namespace pdwg {

/// Dimension of P_k in two variables.
constexpr int element_dim(int degree) { return degree < 0 ? 0 : (degree + 1) * (degree + 2) / 2; }
/// Dimension of P_k on an edge.
constexpr int edge_dim(int degree) { return degree + 1; }

/// Scaled monomials ((x - xc)/h)^a ((y - yc)/h)^b, a + b <= k, ordered by
/// total degree and then by decreasing a.
class ElementBasis {
 public:
  ElementBasis(int degree, Point center, double scale);
  ElementBasis(const Mesh& mesh, int t, int degree);

  int degree() const { return degree_; }
  int size() const { return static_cast<int>(exponents_.size()); }
  const std::vector<std::pair<int, int>>& exponents() const { return exponents_; }

  Eigen::VectorXd values(const Point& p) const;
  /// Row i holds the gradient of basis function i.
  Eigen::MatrixX2d gradients(const Point& p) const;

 private:
  int degree_;
  Point center_;
  double scale_;
  std::vector<std::pair<int, int>> exponents_;
};

/// Monomials s^j, j <= k, in s = (p - midpoint) . tangent / length, using the
/// global edge tangent so both neighbours see the same basis.
class EdgeBasis {
 public:
  EdgeBasis(int degree, Point midpoint, Point tangent, double length);
  EdgeBasis(const Mesh& mesh, int e, int degree);

  int degree() const { return degree_; }
  int size() const { return degree_ + 1; }

  double coordinate(const Point& p) const;
  Eigen::VectorXd values(const Point& p) const;

 private:
  int degree_;
  Point midpoint_;
  Point tangent_;
  double length_;
};

}  // namespace pdwg

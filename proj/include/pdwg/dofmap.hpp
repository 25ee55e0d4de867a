#pragma once

#include <vector>

#include <Eigen/Core>

#include "pdwg/basis.hpp"
#include "pdwg/mesh.hpp"

namespace pdwg {

/// Block layout of one weak finite element field: all element blocks first
/// (P_k per triangle), then all edge blocks (P_k per edge).
struct DofLayout {
  DofLayout() = default;
  DofLayout(const Mesh& mesh, int degree);

  int degree = 1;
  int n_triangles = 0;
  int n_edges = 0;

  int element_block() const { return element_dim(degree); }
  int edge_block() const { return edge_dim(degree); }
  int n_dofs() const { return n_triangles * element_block() + n_edges * edge_block(); }
  int element_offset(int t) const { return t * element_block(); }
  int edge_offset(int e) const { return n_triangles * element_block() + e * edge_block(); }
  /// Size of the local vector {v_0 on T, v_b on its three edges}.
  int local_size() const { return element_block() + 3 * edge_block(); }

  bool operator==(const DofLayout&) const = default;
};

enum class Field { U, Lambda };

/// Global numbering for both fields with their essential constraints:
/// u edge dofs on Gamma_d are fixed, lambda edge dofs on the complement of
/// Gamma_n are fixed. Element dofs are never fixed.
class DofMap {
 public:
  DofMap() = default;
  DofMap(const Mesh& mesh, int degree, const BoundaryConfig& config);

  const DofLayout& layout() const { return layout_; }
  int degree() const { return layout_.degree; }
  int n_dofs() const { return layout_.n_dofs(); }

  bool is_fixed(Field field, int dof) const { return free_index(field, dof) < 0; }
  /// Compact index among the free dofs of the field, or -1 when fixed.
  int free_index(Field field, int dof) const { return map(field)[dof]; }
  int n_free(Field field) const { return field == Field::U ? n_free_u_ : n_free_lambda_; }
  /// Position in the coupled unknown vector (U free | Lambda free), or -1.
  int system_index(Field field, int dof) const;
  int system_size() const { return n_free_u_ + n_free_lambda_; }

  /// Global dofs of triangle t in local order {element, edge 0, edge 1, edge 2}.
  std::vector<int> local_dofs(const Mesh& mesh, int t) const;

 private:
  const std::vector<int>& map(Field field) const { return field == Field::U ? u_free_ : lambda_free_; }

  DofLayout layout_;
  std::vector<int> u_free_;
  std::vector<int> lambda_free_;
  int n_free_u_ = 0;
  int n_free_lambda_ = 0;
};

/// v = {v_0, v_b}: coefficients laid out by a DofLayout.
class WeakFunction {
 public:
  WeakFunction() = default;
  explicit WeakFunction(DofLayout layout);
  WeakFunction(DofLayout layout, Eigen::VectorXd coefficients);

  const DofLayout& layout() const { return layout_; }
  int size() const { return static_cast<int>(coefficients_.size()); }

  Eigen::VectorXd& coefficients() { return coefficients_; }
  const Eigen::VectorXd& coefficients() const { return coefficients_; }

  auto interior(int t) { return coefficients_.segment(layout_.element_offset(t), layout_.element_block()); }
  auto interior(int t) const { return coefficients_.segment(layout_.element_offset(t), layout_.element_block()); }
  auto boundary(int e) { return coefficients_.segment(layout_.edge_offset(e), layout_.edge_block()); }
  auto boundary(int e) const { return coefficients_.segment(layout_.edge_offset(e), layout_.edge_block()); }

  /// Local vector on triangle t in the order {v_0, v_b on edges 0, 1, 2}.
  Eigen::VectorXd local(const Mesh& mesh, int t) const;

  /// v_0 at a point of triangle t.
  double interior_value(const Mesh& mesh, int t, const Point& p) const;
  /// Gradient of v_0 at a point of triangle t.
  Point interior_gradient(const Mesh& mesh, int t, const Point& p) const;
  /// v_b at a point of edge e.
  double boundary_value(const Mesh& mesh, int e, const Point& p) const;

  WeakFunction operator-(const WeakFunction& other) const;

 private:
  DofLayout layout_;
  Eigen::VectorXd coefficients_;
};

}  // namespace pdwg

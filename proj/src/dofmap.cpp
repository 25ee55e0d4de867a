#include "pdwg/dofmap.hpp"

#include <stdexcept>

namespace pdwg {

DofLayout::DofLayout(const Mesh& mesh, int degree_)
    : degree(degree_), n_triangles(mesh.n_triangles()), n_edges(mesh.n_edges()) {
  if (degree < 1) throw std::invalid_argument("weak Galerkin degree must be at least 1");
}

DofMap::DofMap(const Mesh& mesh, int degree, const BoundaryConfig& config) : layout_(mesh, degree) {
  config.check_compatible(mesh);
  const int n = layout_.n_dofs();
  u_free_.assign(n, 0);
  lambda_free_.assign(n, 0);
  for (int e = 0; e < mesh.n_edges(); ++e) {
    const int offset = layout_.edge_offset(e);
    for (int j = 0; j < layout_.edge_block(); ++j) {
      if (config.in_gamma_d(e)) u_free_[offset + j] = -1;
      if (config.in_gamma_n_complement(e)) lambda_free_[offset + j] = -1;
    }
  }
  for (int i = 0; i < n; ++i) {
    if (u_free_[i] >= 0) u_free_[i] = n_free_u_++;
    if (lambda_free_[i] >= 0) lambda_free_[i] = n_free_lambda_++;
  }
}

int DofMap::system_index(Field field, int dof) const {
  const int i = free_index(field, dof);
  if (i < 0) return -1;
  return field == Field::U ? i : n_free_u_ + i;
}

std::vector<int> DofMap::local_dofs(const Mesh& mesh, int t) const {
  std::vector<int> dofs;
  dofs.reserve(layout_.local_size());
  for (int i = 0; i < layout_.element_block(); ++i) dofs.push_back(layout_.element_offset(t) + i);
  for (int e : mesh.triangle_edges(t)) {
    for (int j = 0; j < layout_.edge_block(); ++j) dofs.push_back(layout_.edge_offset(e) + j);
  }
  return dofs;
}

WeakFunction::WeakFunction(DofLayout layout)
    : layout_(layout), coefficients_(Eigen::VectorXd::Zero(layout.n_dofs())) {}

WeakFunction::WeakFunction(DofLayout layout, Eigen::VectorXd coefficients)
    : layout_(layout), coefficients_(std::move(coefficients)) {
  if (coefficients_.size() != layout_.n_dofs()) {
    throw std::invalid_argument("coefficient vector does not match the dof layout");
  }
}

Eigen::VectorXd WeakFunction::local(const Mesh& mesh, int t) const {
  Eigen::VectorXd v(layout_.local_size());
  const int nb = layout_.element_block();
  const int ne = layout_.edge_block();
  v.head(nb) = interior(t);
  const auto& edges = mesh.triangle_edges(t);
  for (int j = 0; j < 3; ++j) v.segment(nb + j * ne, ne) = boundary(edges[j]);
  return v;
}

double WeakFunction::interior_value(const Mesh& mesh, int t, const Point& p) const {
  return ElementBasis(mesh, t, layout_.degree).values(p).dot(interior(t));
}

Point WeakFunction::interior_gradient(const Mesh& mesh, int t, const Point& p) const {
  return ElementBasis(mesh, t, layout_.degree).gradients(p).transpose() * interior(t);
}

double WeakFunction::boundary_value(const Mesh& mesh, int e, const Point& p) const {
  return EdgeBasis(mesh, e, layout_.degree).values(p).dot(boundary(e));
}

WeakFunction WeakFunction::operator-(const WeakFunction& other) const {
  if (!(layout_ == other.layout_)) throw std::invalid_argument("weak functions have different layouts");
  return WeakFunction(layout_, coefficients_ - other.coefficients_);
}

}  // namespace pdwg

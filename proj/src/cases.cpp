#include "pdwg/cases.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace pdwg {

namespace {

using std::cos;
using std::sin;
constexpr double pi = std::numbers::pi;

const std::set<Side> kBottom{Side::Bottom};
const std::set<Side> kLeft{Side::Left};

std::vector<CaseSpec> build_catalog() {
  std::vector<CaseSpec> cases;

  const auto linear = [](const Point& p) { return 1.0 + p.x() + p.y(); };
  const auto linear_grad = [](const Point&) { return Point(1.0, 1.0); };
  const auto zero = [](const Point&) { return 0.0; };

  const auto coscos = [](const Point& p) { return cos(p.x()) * cos(p.y()); };
  const auto coscos_grad = [](const Point& p) {
    return Point(-sin(p.x()) * cos(p.y()), -cos(p.x()) * sin(p.y()));
  };
  const auto coscos_f = [](const Point& p) { return 2.0 * cos(p.x()) * cos(p.y()); };

  const auto bubble = [](const Point& p) { return 30.0 * p.x() * p.y() * (1.0 - p.x()) * (1.0 - p.y()); };
  const auto bubble_grad = [](const Point& p) {
    return Point(30.0 * (1.0 - 2.0 * p.x()) * p.y() * (1.0 - p.y()),
                 30.0 * p.x() * (1.0 - p.x()) * (1.0 - 2.0 * p.y()));
  };
  const auto bubble_f = [](const Point& p) {
    return 60.0 * (p.x() - p.x() * p.x() + p.y() - p.y() * p.y());
  };

  const auto sinpi = [](const Point& p) { return sin(pi * p.x()) * cos(pi * p.y()); };
  const auto sinpi_grad = [](const Point& p) {
    return Point(pi * cos(pi * p.x()) * cos(pi * p.y()), -pi * sin(pi * p.x()) * sin(pi * p.y()));
  };
  const auto sinpi_f = [](const Point& p) { return 2.0 * pi * pi * sin(pi * p.x()) * cos(pi * p.y()); };

  const auto sinsin = [](const Point& p) { return sin(p.x()) * sin(p.y()); };
  const auto sinsin_grad = [](const Point& p) {
    return Point(cos(p.x()) * sin(p.y()), sin(p.x()) * cos(p.y()));
  };
  const auto sinsin_f = [](const Point& p) { return 2.0 * sin(p.x()) * sin(p.y()); };

  const auto xy = [](const Point& p) { return p.x() * p.y(); };
  const auto xy_grad = [](const Point& p) { return Point(p.y(), p.x()); };

  const auto cossin = [](const Point& p) { return cos(p.x()) * sin(p.y()); };
  const auto cossin_grad = [](const Point& p) {
    return Point(-sin(p.x()) * sin(p.y()), cos(p.x()) * cos(p.y()));
  };
  const auto cossin_f = [](const Point& p) { return 2.0 * cos(p.x()) * sin(p.y()); };

  // Cauchy data on bottom and right, Dirichlet only on left, Neumann only on top.
  const std::set<Side> mixed_d{Side::Bottom, Side::Right, Side::Left};
  const std::set<Side> mixed_n{Side::Bottom, Side::Right, Side::Top};
  // Classical mixed problem without Cauchy data.
  const std::set<Side> classic_d{Side::Bottom, Side::Left};
  const std::set<Side> classic_n{Side::Right, Side::Top};
  const std::set<Side> horizontal{Side::Bottom, Side::Top};
  const std::set<Side> vertical{Side::Left, Side::Right};

  cases.push_back(make_case("t1", "u = 1+x+y, Cauchy data on bottom", linear, linear_grad, zero, kBottom, kBottom));
  cases.push_back(make_case("t2", "u = 1+x+y, Cauchy data on left", linear, linear_grad, zero, kLeft, kLeft));
  cases.push_back(make_case("t3", "u = cos(x)cos(y), Cauchy on bottom+right, D on left, N on top", coscos,
                            coscos_grad, coscos_f, mixed_d, mixed_n));
  cases.push_back(make_case("t4", "u = 30xy(1-x)(1-y), Cauchy on bottom+right, D on left, N on top", bubble,
                            bubble_grad, bubble_f, mixed_d, mixed_n));
  cases.push_back(make_case("t5", "u = sin(pi x)cos(pi y), Cauchy on bottom+right, D on left, N on top", sinpi,
                            sinpi_grad, sinpi_f, mixed_d, mixed_n));
  cases.push_back(make_case("t6", "u = cos(x)cos(y), D on bottom+left, N on right+top", coscos, coscos_grad,
                            coscos_f, classic_d, classic_n));
  cases.push_back(make_case("t7", "u = sin(x)sin(y), D on bottom+left, N on right+top", sinsin, sinsin_grad,
                            sinsin_f, classic_d, classic_n));
  cases.push_back(make_case("t8", "u = 30xy(1-x)(1-y), D on bottom+left, N on right+top", bubble, bubble_grad,
                            bubble_f, classic_d, classic_n));
  cases.push_back(make_case("t9", "u = cos(x)cos(y), Cauchy data on bottom and top", coscos, coscos_grad,
                            coscos_f, horizontal, horizontal));
  cases.push_back(make_case("t10", "u = 30xy(1-x)(1-y), Cauchy data on bottom and top", bubble, bubble_grad,
                            bubble_f, horizontal, horizontal));
  cases.push_back(make_case("t11", "u = xy, Cauchy data on left and right", xy, xy_grad, zero, vertical, vertical));
  cases.push_back(make_case("t12", "u = cos(x)sin(y), Cauchy data on left and right", cossin, cossin_grad,
                            cossin_f, vertical, vertical));
  cases.push_back(make_case("t13", "u = cos(x)cos(y), Cauchy data on bottom, D only on top", coscos,
                            coscos_grad, coscos_f, horizontal, kBottom));
  cases.push_back(make_case("t14a", "u = sin(x)sin(y), Cauchy data on bottom", sinsin, sinsin_grad, sinsin_f,
                            kBottom, kBottom));
  cases.push_back(make_case("t14b", "u = cos(x)cos(y), Cauchy data on bottom", coscos, coscos_grad, coscos_f,
                            kBottom, kBottom));
  cases.push_back(make_case("t14c", "u = cos(x)sin(y), Cauchy data on bottom", cossin, cossin_grad, cossin_f,
                            kBottom, kBottom));
  return cases;
}

}  // namespace

Point side_normal(Side side) {
  switch (side) {
    case Side::Bottom:
      return Point(0.0, -1.0);
    case Side::Right:
      return Point(1.0, 0.0);
    case Side::Top:
      return Point(0.0, 1.0);
    case Side::Left:
      return Point(-1.0, 0.0);
  }
  return Point::Zero();
}

CaseSpec make_case(std::string id, std::string description, ScalarFunction u, VectorFunction grad_u,
                   ScalarFunction f, std::set<Side> dirichlet, std::set<Side> neumann) {
  CaseSpec c;
  c.id = std::move(id);
  c.description = std::move(description);
  c.u = u;
  c.grad_u = grad_u;
  c.f = std::move(f);
  c.g1 = u;
  c.g2 = [grad_u, a = c.diffusion](const Point& p, const Point& n) { return (a.at(p) * grad_u(p)).dot(n); };
  c.dirichlet_sides = std::move(dirichlet);
  c.neumann_sides = std::move(neumann);
  return c;
}

const std::vector<CaseSpec>& catalog() {
  static const std::vector<CaseSpec> cases = build_catalog();
  return cases;
}

const CaseSpec& find_case(const std::string& id) {
  for (const CaseSpec& c : catalog()) {
    if (c.id == id) return c;
  }
  throw std::invalid_argument("unknown case id '" + id + "'");
}

CaseDiagnostics validate_case(const CaseSpec& c, unsigned seed) {
  constexpr int kPoints = 10;
  constexpr double kStep = 1e-4;
  constexpr double kPdeTolerance = 1e-5;
  constexpr double kTraceTolerance = 1e-6;

  CaseDiagnostics diag;
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(0.05, 0.95);

  const auto fail = [&diag](const std::string& what, const Point& p, double residual) {
    if (!diag.ok) return;
    diag.ok = false;
    std::ostringstream msg;
    msg << what << " mismatch " << residual << " at (" << p.x() << ", " << p.y() << ")";
    diag.message = msg.str();
  };

  const auto fd_gradient = [&c](const Point& p, double step) {
    const Point dx(step, 0.0), dy(0.0, step);
    return Point((c.u(p + dx) - c.u(p - dx)) / (2.0 * step), (c.u(p + dy) - c.u(p - dy)) / (2.0 * step));
  };

  for (int i = 0; i < kPoints; ++i) {
    const Point p(unit(rng), unit(rng));
    // -div(a grad u) by central differences of the flux built from u itself.
    const Point dx(kStep, 0.0), dy(0.0, kStep);
    double div = 0.0;
    if (c.diffusion.is_identity) {
      const double u0 = c.u(p);
      div = (c.u(p + dx) - 2.0 * u0 + c.u(p - dx) + c.u(p + dy) - 2.0 * u0 + c.u(p - dy)) / (kStep * kStep);
    } else {
      const auto fd_flux = [&](const Point& q) { return (c.diffusion.at(q) * fd_gradient(q, kStep)).eval(); };
      div = (fd_flux(p + dx).x() - fd_flux(p - dx).x() + fd_flux(p + dy).y() - fd_flux(p - dy).y()) /
            (2.0 * kStep);
    }
    const double pde = std::abs(-div - c.f(p));
    diag.max_pde_residual = std::max(diag.max_pde_residual, pde);
    if (pde > kPdeTolerance * std::max(1.0, std::abs(c.f(p)))) fail("-div(a grad u) = f", p, pde);

    const double grad = (fd_gradient(p, 1e-6) - c.grad_u(p)).norm();
    diag.max_gradient_residual = std::max(diag.max_gradient_residual, grad);
    if (grad > kTraceTolerance * std::max(1.0, c.grad_u(p).norm())) fail("gradient", p, grad);
  }

  for (Side side : {Side::Bottom, Side::Right, Side::Top, Side::Left}) {
    const Point n = side_normal(side);
    for (int i = 0; i < kPoints; ++i) {
      const double s = unit(rng);
      Point p;
      switch (side) {
        case Side::Bottom: p = Point(s, 0.0); break;
        case Side::Right: p = Point(1.0, s); break;
        case Side::Top: p = Point(s, 1.0); break;
        case Side::Left: p = Point(0.0, s); break;
      }
      if (c.dirichlet_sides.count(side)) {
        const double r = c.g1 ? std::abs(c.g1(p) - c.u(p)) : INFINITY;
        diag.max_dirichlet_residual = std::max(diag.max_dirichlet_residual, r);
        if (!(r <= 1e-12 * std::max(1.0, std::abs(c.u(p))))) fail("g_1 = u", p, r);
      }
      if (c.neumann_sides.count(side)) {
        const double expected = (c.diffusion.at(p) * fd_gradient(p, 1e-6)).dot(n);
        const double r = c.g2 ? std::abs(c.g2(p, n) - expected) : INFINITY;
        diag.max_neumann_residual = std::max(diag.max_neumann_residual, r);
        if (!(r <= kTraceTolerance * std::max(1.0, std::abs(expected)))) fail("g_2 = a grad u . n", p, r);
      }
    }
  }
  return diag;
}

}  // namespace pdwg

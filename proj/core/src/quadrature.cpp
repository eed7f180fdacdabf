#include "holex/quadrature.hpp"

#include <cmath>
#include <numeric>

namespace holex {

namespace {

// Legendre value and derivative at x via the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

void append_projective_line(const Geometry& geom, int order, QuadratureRule& rule) {
  const long long n_power = geom.power();
  const int radial = int(n_power / 2) + 3 + (order + 1) / 2;
  const int angular = int(n_power) + 2 + order;
  // Chart split at |z| = 3/2; the radial variable is t = |z|^2 / (1 + |z|^2).
  const double split[2] = {9.0 / 13.0, 4.0 / 13.0};
  for (int chart = 0; chart < 2; ++chart) {
    const auto glr = gauss_legendre(radial, 0.0, split[chart]);
    for (const auto& [t, wt] : glr) {
      const double r = std::sqrt(t / (1.0 - t));
      const double w = double(n_power) * M_PI * wt / angular;
      for (int a = 0; a < angular; ++a) {
        const double theta = 2.0 * M_PI * a / angular;
        rule.nodes.push_back(
            {ChartPoint::scalar(chart, std::polar(r, theta)), w});
      }
    }
  }
}

void append_projective_space(const Geometry& geom, int order, QuadratureRule& rule) {
  const int m = geom.dim();
  const long long n_power = geom.power();
  const int radial = int((n_power + m) / 2) + 3 + (order + 1) / 2;
  const int angular = int(n_power) + 2 + order;

  const auto gl_t = gauss_legendre(radial, 0.0, 1.0);
  // Stick-breaking coordinates over the simplex of squared moduli.
  std::vector<int> ang(m, 0);

  std::size_t radial_combos = 1;
  for (int i = 0; i < m; ++i) radial_combos *= gl_t.size();

  for (std::size_t combo = 0; combo < radial_combos; ++combo) {
    std::size_t rest = combo;
    const auto& [big_t, w_big] = gl_t[rest % gl_t.size()];
    rest /= gl_t.size();
    double weight_radial = w_big * std::pow(big_t, m - 1);
    const double big_u = big_t / (1.0 - big_t);

    // Split the simplex barycentric weights.
    std::vector<double> frac(m, 1.0);
    double carry = 1.0;
    bool skip = false;
    for (int i = 0; i + 1 < m; ++i) {
      const auto& [t_i, w_i] = gl_t[rest % gl_t.size()];
      rest /= gl_t.size();
      frac[i] = carry * t_i;
      carry *= (1.0 - t_i);
      weight_radial *= w_i * std::pow(1.0 - t_i, m - 2 - i);
      if (weight_radial == 0.0) skip = true;
    }
    frac[m - 1] = carry;
    if (skip) continue;

    const double base_weight = std::pow(double(n_power) * M_PI / angular, m) * weight_radial;

    // Tensor angular grid.
    std::fill(ang.begin(), ang.end(), 0);
    while (true) {
      Eigen::VectorXcd coord(m);
      for (int i = 0; i < m; ++i) {
        const double r = std::sqrt(big_u * frac[i]);
        coord(i) = std::polar(r, 2.0 * M_PI * ang[i] / angular);
      }
      rule.nodes.push_back({ChartPoint(0, coord), base_weight});
      int axis = 0;
      while (axis < m && ++ang[axis] == angular) {
        ang[axis] = 0;
        ++axis;
      }
      if (axis == m) break;
    }
  }
}

void append_elliptic(const Geometry& geom, int order, QuadratureRule& rule) {
  const GeometrySpec& spec = geom.spec();
  const long long k = geom.section_count();
  const double im_tau = spec.tau.imag();
  // Truncation window of the theta series; grid fine enough that every
  // retained frequency is integrated exactly.
  const int window = int(std::ceil(std::sqrt(std::log(2e12) / (M_PI * double(k) * im_tau)))) + 1;
  const long long nx = k * (2 * window + 3) + 1 + order;
  const long long ny =
      std::max<long long>(32, (long long)(std::ceil(8.0 * std::sqrt(double(k) * im_tau))) + 16) +
      4 * order;
  const double w = M_PI * double(geom.power()) * spec.deg_l / double(nx * ny);
  rule.nodes.reserve(std::size_t(nx * ny));
  for (long long j = 0; j < ny; ++j)
    for (long long i = 0; i < nx; ++i) {
      const cdouble z = cdouble((i + 0.5) / double(nx), 0.0) +
                        spec.tau * ((j + 0.5) / double(ny));
      rule.nodes.push_back({ChartPoint::scalar(0, z), w});
    }
}

}  // namespace

double QuadratureRule::total_weight() const {
  double acc = 0.0;
  for (const auto& node : nodes) acc += node.weight;
  return acc;
}

std::vector<std::pair<double, double>> gauss_legendre(int count, double a, double b) {
  if (count < 1) throw ValidationError("quadrature order must be positive");
  std::vector<std::pair<double, double>> out(count);
  for (int i = 0; i < (count + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (count + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(count, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const auto [p, dp] = legendre(count, x);
    (void)p;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const double half = 0.5 * (b - a);
    out[i] = {a + half * (1.0 - x), half * w};
    out[count - 1 - i] = {a + half * (1.0 + x), half * w};
  }
  return out;
}

QuadratureRule build_quadrature(const Geometry& geom, int order) {
  if (order < 1) throw ValidationError("quadrature order must be at least 1");
  QuadratureRule rule;
  if (geom.spec().kind == GeometryKind::EllipticCurve) {
    append_elliptic(geom, order, rule);
  } else if (geom.dim() == 1) {
    append_projective_line(geom, order, rule);
  } else {
    if (geom.dim() > 3)
      throw ValidationError("tensor quadrature is limited to dimension at most 3");
    append_projective_space(geom, order, rule);
  }
  return rule;
}

}  // namespace holex

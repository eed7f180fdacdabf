#include "holex/sections.hpp"

#include <cmath>

namespace holex {

namespace {

constexpr double kTailBudget = 2e12;  // reciprocal of the accepted series tail

void enumerate_exponents(int slots, int total, std::vector<int>& scratch,
                         std::vector<std::vector<int>>& out) {
  if (int(scratch.size()) == slots - 1) {
    scratch.push_back(total);
    out.push_back(scratch);
    scratch.pop_back();
    return;
  }
  for (int e = 0; e <= total; ++e) {
    scratch.push_back(e);
    enumerate_exponents(slots, total - e, scratch, out);
    scratch.pop_back();
  }
}

}  // namespace

int theta_truncation_window(long long sections, double im_tau) {
  const double radius = std::sqrt(std::log(kTailBudget) / (M_PI * double(sections) * im_tau));
  return int(std::ceil(radius)) + 1;
}

RawBasis::RawBasis(const Geometry& geom) : geom_(&geom) {
  const GeometrySpec& spec = geom.spec();
  if (spec.kind == GeometryKind::ProjectiveSpace) {
    std::vector<int> scratch;
    enumerate_exponents(spec.m + 1, int(geom.power()), scratch, exponents_);
  } else {
    const double strength = M_PI * double(geom.section_count()) * spec.tau.imag();
    if (strength > 650.0)
      throw ValidationError("theta series magnitude would overflow doubles at this polarization");
  }
}

RawBasis RawBasis::make(const Geometry& geom) { return RawBasis(geom); }

long long RawBasis::count() const {
  if (geom_->spec().kind == GeometryKind::ProjectiveSpace)
    return (long long)(exponents_.size());
  return geom_->section_count();
}

Eigen::VectorXcd RawBasis::evaluate(const ChartPoint& p) const {
  Eigen::VectorXcd value;
  evaluate_with_gradient(p, &value, nullptr);
  return value;
}

void RawBasis::evaluate_with_gradient(const ChartPoint& p, Eigen::VectorXcd* value,
                                      Eigen::MatrixXcd* gradient) const {
  if (geom_->spec().kind == GeometryKind::ProjectiveSpace) {
    eval_projective(p, value, gradient);
  } else {
    eval_theta(p, value, gradient);
  }
}

void RawBasis::eval_projective(const ChartPoint& p, Eigen::VectorXcd* value,
                               Eigen::MatrixXcd* gradient) const {
  const int m = geom_->dim();
  const int degree = int(geom_->power());
  if (p.chart < 0 || p.chart > m) throw ValidationError("chart index out of range");
  if (p.coord.size() != m) throw ValidationError("coordinate size does not match the dimension");

  // Powers of each affine coordinate up to the section degree.
  Eigen::MatrixXcd pows(m, degree + 1);
  for (int s = 0; s < m; ++s) {
    pows(s, 0) = 1.0;
    for (int e = 1; e <= degree; ++e) pows(s, e) = pows(s, e - 1) * p.coord(s);
  }

  const long long n = count();
  value->resize(n);
  if (gradient) gradient->setZero(m, n);

  // The local representative of Z^alpha in chart c multiplies the affine
  // coordinates by the exponents of every slot except c.
  for (long long b = 0; b < n; ++b) {
    const std::vector<int>& alpha = exponents_[std::size_t(b)];
    cdouble v = 1.0;
    int slot = 0;
    for (int j = 0; j <= m; ++j) {
      if (j == p.chart) continue;
      v *= pows(slot, alpha[std::size_t(j)]);
      ++slot;
    }
    (*value)(b) = v;
    if (!gradient) continue;
    for (int s = 0; s < m; ++s) {
      cdouble g = 1.0;
      int t = 0;
      bool zero = false;
      for (int j = 0; j <= m; ++j) {
        if (j == p.chart) continue;
        const int e = alpha[std::size_t(j)];
        if (t == s) {
          if (e == 0) {
            zero = true;
            break;
          }
          g *= double(e) * pows(t, e - 1);
        } else {
          g *= pows(t, e);
        }
        ++t;
      }
      (*gradient)(s, b) = zero ? cdouble(0.0) : g;
    }
  }
}

void RawBasis::eval_theta(const ChartPoint& p, Eigen::VectorXcd* value,
                          Eigen::MatrixXcd* gradient) const {
  const GeometrySpec& spec = geom_->spec();
  const long long k = geom_->section_count();
  const cdouble tau = spec.tau;
  const double im_tau = tau.imag();

  long long n1 = 0;
  long long n2 = 0;
  const ChartPoint reduced = geom_->reduce_modulo_lattice(p.z(), &n1, &n2);
  const cdouble z0 = reduced.z();
  const double y0 = z0.imag();

  // p.z() = z0 + n1 + n2 tau, so the stored value picks up the standard
  // automorphy factor of the tau-translation.
  const cdouble i_pi(0.0, M_PI);
  const cdouble carry = std::exp(-i_pi * double(k) * (double(n2) * double(n2) * tau +
                                                      2.0 * double(n2) * z0));

  const int window = theta_truncation_window(k, im_tau);
  value->resize(k);
  if (gradient) gradient->resize(1, k);

  for (long long j = 0; j < k; ++j) {
    const double center = -double(j) / double(k) - y0 / im_tau;
    const long long lo = (long long)(std::floor(center)) - window;
    const long long hi = (long long)(std::ceil(center)) + window;
    cdouble sum = 0.0;
    cdouble dsum = 0.0;
    for (long long l = lo; l <= hi; ++l) {
      const double a = double(l) + double(j) / double(k);
      const cdouble exponent = i_pi * (tau * double(k) * a * a + 2.0 * double(k) * z0 * a);
      const cdouble term = std::exp(exponent);
      sum += term;
      dsum += cdouble(0.0, 2.0 * M_PI * double(k) * a) * term;
    }
    (*value)(j) = carry * sum;
    if (gradient)
      (*gradient)(0, j) =
          carry * (dsum - cdouble(0.0, 2.0 * M_PI * double(k) * double(n2)) * sum);
  }
}

Eigen::MatrixXcd gram_matrix(const RawBasis& basis, const QuadratureRule& rule) {
  const Geometry& geom = basis.geometry();
  const long long n = basis.count();
  const std::size_t nodes = rule.nodes.size();
  const double measure_scale = std::pow(double(geom.power()), -geom.dim());

  // gram(j, k) = sum_i S_j(x_i) conj(S_k(x_i)) d_i, accumulated in node
  // blocks to bound memory on fine rules.
  constexpr std::size_t kBlock = 4096;
  Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd weighted(kBlock, n);
  std::size_t fill = 0;
  auto flush = [&]() {
    if (fill == 0) return;
    const auto block = weighted.topRows(fill);
    gram.noalias() += block.transpose() * block.conjugate();
    fill = 0;
  };
  for (std::size_t i = 0; i < nodes; ++i) {
    const QuadratureNode& node = rule.nodes[i];
    const double density =
        std::exp(-geom.potential(node.point)) * node.weight * measure_scale;
    weighted.row(fill++) = basis.evaluate(node.point).transpose() * std::sqrt(density);
    if (fill == kBlock) flush();
  }
  flush();
  // Quadrature rounding is the only source of asymmetry; fold it away so the
  // result is Hermitian by construction.
  gram = ((gram + gram.adjoint().eval()) * 0.5).eval();
  return gram;
}

GramFactor orthonormalize_gram(const Eigen::MatrixXcd& gram) {
  const long long n = gram.rows();
  if (gram.cols() != n) throw ValidationError("Gram matrix must be square");

  Eigen::VectorXd scale(n);
  for (long long j = 0; j < n; ++j) {
    const double d = gram(j, j).real();
    if (!(d > 0.0)) throw NumericError("Gram diagonal is not positive");
    scale(j) = 1.0 / std::sqrt(d);
  }
  const Eigen::MatrixXcd equilibrated =
      scale.asDiagonal() * gram * scale.asDiagonal();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eigen(equilibrated);
  if (eigen.info() != Eigen::Success)
    throw NumericError("Gram eigenvalue computation failed");
  const double lo = eigen.eigenvalues().minCoeff();
  const double hi = eigen.eigenvalues().maxCoeff();
  if (!(lo > 0.0)) throw NumericError("equilibrated Gram matrix is not positive definite");

  GramFactor factor;
  factor.condition = hi / lo;
  if (factor.condition > 1e12)
    throw NumericError("equilibrated Gram matrix is too ill-conditioned");

  const Eigen::LLT<Eigen::MatrixXcd> llt(equilibrated);
  if (llt.info() != Eigen::Success) throw NumericError("Gram Cholesky factorization failed");
  const Eigen::MatrixXcd lower = llt.matrixL();
  // transform = D L^{-T}: maps raw coefficients to an orthonormal family.
  const Eigen::MatrixXcd inv =
      lower.triangularView<Eigen::Lower>().solve(Eigen::MatrixXcd::Identity(n, n));
  factor.transform = scale.asDiagonal() * inv.transpose();
  return factor;
}

OrthonormalBasis::OrthonormalBasis(const Geometry& geom, RawBasis raw, GramFactor factor)
    : raw_(std::move(raw)), factor_(std::move(factor)) {
  if (&raw_.geometry() != &geom)
    throw ValidationError("orthonormal basis must reuse the geometry of its raw basis");
  if (factor_.transform.rows() != raw_.count() || factor_.transform.cols() != raw_.count())
    throw ValidationError("transform size does not match the basis");
}

Eigen::VectorXcd OrthonormalBasis::evaluate(const ChartPoint& p) const {
  return factor_.transform.transpose() * raw_.evaluate(p);
}

void OrthonormalBasis::evaluate_with_gradient(const ChartPoint& p, Eigen::VectorXcd* value,
                                              Eigen::MatrixXcd* gradient) const {
  Eigen::VectorXcd raw_value;
  Eigen::MatrixXcd raw_gradient;
  raw_.evaluate_with_gradient(p, &raw_value, gradient ? &raw_gradient : nullptr);
  if (value) *value = factor_.transform.transpose() * raw_value;
  if (gradient) *gradient = raw_gradient * factor_.transform;
}

OrthonormalBasis make_orthonormal_basis(const Geometry& geom, int quadrature_order) {
  RawBasis raw = RawBasis::make(geom);
  const QuadratureRule rule = build_quadrature(geom, quadrature_order);
  try {
    GramFactor factor = orthonormalize_gram(gram_matrix(raw, rule));
    return OrthonormalBasis(geom, std::move(raw), std::move(factor));
  } catch (const NumericError& err) {
    throw NumericError(std::string(err.what()) + " (geometry " + geom.spec().name() +
                       ", power " + std::to_string(geom.power()) + ", " +
                       std::to_string(rule.nodes.size()) + " quadrature nodes)");
  }
}

}  // namespace holex

#include <benchmark/benchmark.h>

#include "holex/embedding.hpp"
#include "holex/excursion.hpp"

namespace {

using namespace holex;

const OrthonormalBasis& line_basis(long long power) {
  static std::map<long long, OrthonormalBasis> cache;
  auto it = cache.find(power);
  if (it == cache.end()) {
    const Geometry geom(GeometrySpec::projective(1), power);
    it = cache.emplace(power, make_orthonormal_basis(geom)).first;
  }
  return it->second;
}

void bench_basis_evaluate(benchmark::State& state) {
  const OrthonormalBasis& basis = line_basis(state.range(0));
  const ChartPoint p = ChartPoint::scalar(0, cdouble(0.3, -0.4));
  for (auto _ : state) benchmark::DoNotOptimize(basis.evaluate(p));
}
BENCHMARK(bench_basis_evaluate)->Arg(4)->Arg(16)->Arg(64);

void bench_kernel_derivatives(benchmark::State& state) {
  const OrthonormalBasis& basis = line_basis(state.range(0));
  const FrameVector fz = frame_vector(basis, ChartPoint::scalar(0, cdouble(0.1, 0.2)));
  const FrameVector fw = frame_vector(basis, ChartPoint::scalar(0, cdouble(-0.2, 0.15)));
  for (auto _ : state) benchmark::DoNotOptimize(e_derivatives(fz, fw));
}
BENCHMARK(bench_kernel_derivatives)->Arg(4)->Arg(16)->Arg(64);

void bench_gram_assembly(benchmark::State& state) {
  const Geometry geom(GeometrySpec::projective(1), state.range(0));
  const RawBasis raw = RawBasis::make(geom);
  const QuadratureRule rule = build_quadrature(geom);
  for (auto _ : state) benchmark::DoNotOptimize(gram_matrix(raw, rule));
}
BENCHMARK(bench_gram_assembly)->Arg(8)->Arg(32);

void bench_normal_slice(benchmark::State& state) {
  const OrthonormalBasis& basis = line_basis(8);
  const FrameVector fz = frame_vector(basis, ChartPoint::scalar(0, cdouble(0.05, 0.0)));
  const FrameVector fw = frame_vector(basis, ChartPoint::scalar(0, cdouble(0.0, 0.2)));
  const SliceMode mode = state.range(0) == 0 ? SliceMode::GeometricPath : SliceMode::KernelPath;
  for (auto _ : state) benchmark::DoNotOptimize(normal_slice_distance(fz, fw, mode));
}
BENCHMARK(bench_normal_slice)->Arg(0)->Arg(1);

void bench_field_and_sup(benchmark::State& state) {
  const OrthonormalBasis& basis = line_basis(4);
  const TriMesh mesh = build_mesh(basis.geometry(), 0.12);
  const MeshFieldEvaluator eval(basis, mesh);
  long long index = 0;
  for (auto _ : state) {
    const CoefficientVector coeff = sample_coefficients(7, index++, basis.count());
    const Eigen::VectorXd field = eval.field(coeff.c);
    benchmark::DoNotOptimize(sup_refine(eval, coeff.c, field));
  }
}
BENCHMARK(bench_field_and_sup);

void bench_theta_evaluate(benchmark::State& state) {
  const Geometry geom(GeometrySpec::elliptic(cdouble(0.0, 1.0), 3), 1);
  const OrthonormalBasis basis = make_orthonormal_basis(geom);
  const ChartPoint p = ChartPoint::scalar(0, cdouble(0.37, 0.41));
  for (auto _ : state) benchmark::DoNotOptimize(basis.evaluate(p));
}
BENCHMARK(bench_theta_evaluate);

}  // namespace

BENCHMARK_MAIN();

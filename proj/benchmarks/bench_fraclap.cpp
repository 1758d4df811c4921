// Copyright the fraclap authors.
// SPDX-License-Identifier: Apache-2.0

#include <memory>

#include <Eigen/Cholesky>
#include <benchmark/benchmark.h>

#include "fraclap/assembly.hpp"
#include "fraclap/control.hpp"
#include "fraclap/kernel.hpp"
#include "fraclap/study.hpp"

using namespace fraclap;

namespace
{

void BM_AssembleStiffness(benchmark::State &state)
{
  const auto m = generate_disk_mesh(static_cast<int>(state.range(0)));
  const auto k = KernelParams::make(0.5);
  for (auto _ : state)
    benchmark::DoNotOptimize(assemble_stiffness(m, k));
  state.counters["dofs"] = m.num_interior();
}
BENCHMARK(BM_AssembleStiffness)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_ComplementWeight(benchmark::State &state)
{
  const auto m = generate_disk_mesh(static_cast<int>(state.range(0)));
  const auto k = KernelParams::make(0.3);
  double x = 0.0;
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(complement_weight(m, k, {0.5 * x, 0.3}));
    x = x > 0.9 ? 0.0 : x + 0.01;
  }
  state.counters["edges"] = static_cast<double>(m.boundary_edges().size());
}
BENCHMARK(BM_ComplementWeight)->DenseRange(2, 5);

void BM_Cholesky(benchmark::State &state)
{
  const auto K = assemble_stiffness(generate_disk_mesh(static_cast<int>(state.range(0))),
                                    KernelParams::make(0.5));
  for (auto _ : state)
  {
    Eigen::LLT<DenseMatrix> llt(K);
    benchmark::DoNotOptimize(llt.matrixLLT().data());
  }
  state.counters["dofs"] = static_cast<double>(K.rows());
}
BENCHMARK(BM_Cholesky)->DenseRange(3, 4)->Unit(benchmark::kMillisecond);

void BM_SolveOcp(benchmark::State &state)
{
  auto mesh = std::make_shared<const TriangleMesh>(generate_disk_mesh(static_cast<int>(state.range(0))));
  const NonlocalOperator op(mesh, KernelParams::make(0.5));
  const OCProblem prob = manufactured_problem(ManufacturedSolution::make(0.5));
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_ocp(prob, op, ControlField::constant(*mesh, -0.45)));
}
BENCHMARK(BM_SolveOcp)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

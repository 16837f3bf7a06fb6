#include "slidelab/config.hpp"
#include "slidelab/contact.hpp"
#include "slidelab/ssim.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace slidelab;

const config::RunConfig& table() {
  static const config::RunConfig cfg = config::parse(config::default_document());
  return cfg;
}

ssim::Execution mode(const benchmark::State& st) {
  return st.range(0) == 0 ? ssim::Execution::serial : ssim::Execution::parallel;
}

void BM_SsimSweep(benchmark::State& st) {
  const auto& cfg = table();
  const auto grid = ssim::uniform_grid(0.0, 1.0, static_cast<int>(st.range(1)));
  ssim::SweepOptions opt;
  opt.execution = mode(st);
  for (auto _ : st) {
    auto sw = ssim::sweep_ssim(cfg.beam, cfg.slider, cfg.excitation, grid, opt);
    benchmark::DoNotOptimize(sw.branches.data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(1));
}
BENCHMARK(BM_SsimSweep)
    ->ArgNames({"parallel", "points"})
    ->Args({0, 1001})
    ->Args({1, 1001})
    ->Args({0, 10001})
    ->Args({1, 10001})
    ->Unit(benchmark::kMillisecond);

// Short forward/backward pair on three grid points.
void BM_PcsPair(benchmark::State& st) {
  const auto& cfg = table();
  const contact::Model m = config::build_model(cfg, 3);
  contact::PcsOptions opt;
  opt.sim = config::sim_options(cfg);
  opt.window = 0.05;
  opt.max_time = 0.1;
  opt.execution = mode(st);
  const std::vector<double> grid{0.25, 0.3, 0.35};
  for (auto _ : st) {
    auto p = contact::pcs_sweep_both(m, cfg.excitation, grid, opt);
    benchmark::DoNotOptimize(p.forward.data());
  }
}
BENCHMARK(BM_PcsPair)->ArgNames({"parallel"})->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();

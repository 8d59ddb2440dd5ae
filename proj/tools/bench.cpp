// Times bisimulation runs over the bundled fixture machines. Independent
// boards run in parallel when OpenMP is available.
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "mtg/harness.hpp"

int main(int argc, char** argv) {
  int64_t cycles = argc > 1 ? std::stoll(argv[1]) : 200;
  struct Job {
    std::string name;
    mtg::tm::TuringMachineSpec machine;
    mtg::tm::MachineConfig cfg;
    mtg::harness::BisimulationReport report;
    double seconds = 0;
  };
  std::vector<Job> jobs = {
      {"perpetual_incrementer", fixtures::perpetual_incrementer(), {}, {}, 0},
      {"wall_bouncer", fixtures::wall_bouncer(), fixtures::wall_bouncer_start(),
       {}, 0},
      {"three_state_loop", fixtures::three_state_loop(), {}, {}, 0},
  };
  auto t0 = std::chrono::steady_clock::now();
#pragma omp parallel for schedule(dynamic)
  for (size_t i = 0; i < jobs.size(); ++i) {
    auto j0 = std::chrono::steady_clock::now();
    jobs[i].report = mtg::harness::verify_bisimulation(jobs[i].machine,
                                                       jobs[i].cfg, cycles);
    jobs[i].seconds = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - j0)
                          .count();
  }
  double total = std::chrono::duration<double>(
                     std::chrono::steady_clock::now() - t0)
                     .count();
  bool all_ok = true;
  for (const auto& j : jobs) {
    int64_t actions = 0;
    for (const auto& [arity, count] : j.report.forcedness_histogram)
      actions += count;
    std::printf("%-22s ok=%d cycles=%lld actions=%lld  %.3fs (%.0f act/s)\n",
                j.name.c_str(), int(j.report.ok),
                (long long)j.report.cycles_checked, (long long)actions,
                j.seconds, actions / (j.seconds > 0 ? j.seconds : 1));
    all_ok = all_ok && j.report.ok;
  }
  std::printf("total %.3fs\n", total);
  return all_ok ? 0 : 1;
}

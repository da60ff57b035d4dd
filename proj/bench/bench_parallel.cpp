// Serial reference against the OpenMP kernels: restriction-path H^1_loc and
// the brute-force oracle. Prints one line per workload with both timings.

#include <chrono>
#include <iostream>
#include <omp.h>

#include "cohomlab/brute_force.hpp"
#include "cohomlab/cohom.hpp"

namespace {

template <class F>
double millis(F f, int reps) {
  auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  std::chrono::duration<double, std::milli> d = std::chrono::steady_clock::now() - start;
  return d.count() / reps;
}

}  // namespace

int main() {
  using namespace cohomlab;
  std::cout << "threads: " << omp_get_max_threads() << "\n";

  struct Workload {
    const char* label;
    MatGroup group;
  };
  ModulusContext c9(3, 2);
  std::vector<Workload> restriction_loads{
      {"example group p=3", make_example_group(3).group},
      {"example group p=5", make_example_group(5).group},
      {"diagonal group mod 9", full_diagonal_group(c9)},
      {"upper triangular mod 9", full_upper_triangular_group(c9)},
  };
  for (const auto& w : restriction_loads) {
    std::vector<std::int64_t> a, b;
    double serial = millis([&] { a = h1_loc_via_restrictions(w.group, Execution::serial); }, 3);
    double parallel = millis([&] { b = h1_loc_via_restrictions(w.group, Execution::parallel); }, 3);
    std::cout << "restrictions  " << w.label << " |G|=" << w.group.order() << "  serial " << serial
              << " ms  parallel " << parallel << " ms  " << (a == b ? "same" : "DIFFERENT") << "\n";
  }

  std::vector<Workload> brute_loads{
      {"GL2(F3)", general_linear_group(ModulusContext(3, 1))},
      {"example group p=3", make_example_group(3).group},
  };
  for (const auto& w : brute_loads) {
    BruteForceResult a, b;
    double serial = millis([&] { a = brute_force_cohomology(w.group, Execution::serial); }, 1);
    double parallel = millis([&] { b = brute_force_cohomology(w.group, Execution::parallel); }, 1);
    bool same = a.z1_order == b.z1_order && a.local_order == b.local_order && a.h1loc == b.h1loc;
    std::cout << "brute force   " << w.label << " |G|=" << w.group.order() << "  serial " << serial
              << " ms  parallel " << parallel << " ms  " << (same ? "same" : "DIFFERENT") << "\n";
  }
  return 0;
}

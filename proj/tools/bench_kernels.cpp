// Serial reference kernels vs their OpenMP counterparts: wall time and the
// max difference of the results. Usage: bench_kernels [repeats]

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "vkg/config.hpp"
#include "vkg/field_history.hpp"
#include "vkg/phase_grid.hpp"
#include "vkg/retarded.hpp"
#include "vkg/vlasov1d.hpp"

using namespace vkg;

template <class F>
double best_of(int repeats, F&& f) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

void report(const char* name, double serial, double parallel, double diff) {
  std::printf("%-22s serial %9.4f s  parallel %9.4f s  speedup %5.2f  max|diff| %.3e\n", name,
              serial, parallel, serial / parallel, diff);
}

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::max(1, std::atoi(argv[1])) : 3;
  std::printf("threads: %d, repeats: %d\n", omp_get_max_threads(), repeats);

  // Retarded field: history of a drifting Gaussian density.
  {
    const SpatialGrid1D grid(-6.0, 6.0, 401);
    const double dt = 0.5 * grid.dx();
    const std::size_t steps = 120;
    FieldHistory hist(grid, dt);
    for (std::size_t m = 0; m < steps; ++m) {
      std::vector<double> rho(static_cast<std::size_t>(grid.size()));
      const double c = 0.3 * hist.time(m);
      for (int i = 0; i < grid.size(); ++i) {
        const double x = grid.x(i) - c;
        rho[static_cast<std::size_t>(i)] = std::exp(-4.0 * x * x);
      }
      hist.append(std::move(rho));
    }
    const double t = static_cast<double>(steps) * dt;
    std::vector<double> serial(static_cast<std::size_t>(grid.size()));
    RetardedGridValues par;
    const double ts = best_of(repeats, [&] {
      for (int i = 0; i < grid.size(); ++i)
        serial[static_cast<std::size_t>(i)] = retarded_point_reference(hist, t, grid.x(i)).ux;
    });
    const double tp = best_of(repeats, [&] {
      RetardedField1D eval(grid, dt);
      par = eval.evaluate(hist, steps);
    });
    double diff = 0.0;
    for (std::size_t i = 0; i < serial.size(); ++i) diff = std::max(diff, std::abs(serial[i] - par.ux[i]));
    report("retarded field", ts, tp, diff);
  }

  // One semi-Lagrangian step under an analytic force.
  {
    const SpatialGrid1D x_axis(-3.0, 3.0, 201);
    const SpatialGrid1D v_axis(-3.0, 3.0, 201);
    const PhaseGrid f = PhaseGrid::sample(x_axis, v_axis, make_particles(ParticleSpec{}));
    const ForceFn force = [](double s, double x) { return 0.2 * std::sin(x) * std::cos(s); };
    const ForceField<1> field = to_force_field(force);
    const double dt = 0.5 * x_axis.dx();
    const StepOptions opts{false, false};
    PhaseGrid a = f;
    PhaseGrid b = f;
    const double ts =
        best_of(repeats, [&] { a = semi_lagrangian_step_reference(f, field, 0.0, dt, opts); });
    const double tp = best_of(repeats, [&] { b = semi_lagrangian_step(f, force, 0.0, dt, opts); });
    double diff = 0.0;
    for (std::size_t i = 0; i < a.values().size(); ++i)
      diff = std::max(diff, std::abs(a.values()[i] - b.values()[i]));
    report("semi-Lagrangian step", ts, tp, diff);
  }
  return 0;
}

// Throughput comparison of the serial reference (workers=1) against the
// OpenMP-parallel path for the two Monte Carlo kernels. The determinism
// contract makes both paths produce identical results; this target measures
// the speedup and double-checks the equality on the way.
#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "latdiv/channel.hpp"
#include "latdiv/simulate.hpp"

using namespace latdiv;

namespace {

double now_s() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

int hardware_workers() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace

int main() {
  int par = hardware_workers();
  std::printf("latdiv benchmark: serial reference vs %d OpenMP workers\n\n", par);

  {
    ExperimentConfig cfg;
    cfg.field_spec = "quadratic(2)";
    cfg.code_gen = {2, 50, 25, 3, 19};
    cfg.prime = 2;
    cfg.decoder = DecoderKind::coset;
    cfg.snr_db_start = cfg.snr_db_stop = 22;
    cfg.snr_db_step = 2;
    cfg.max_frames = 30000;
    cfg.min_frame_errors = 30000;  // fixed workload, no early stop
    cfg.seed = 7;

    cfg.workers = 1;
    double t0 = now_s();
    FerCurve serial = run_fer_sweep(cfg);
    double ts = now_s() - t0;

    cfg.workers = par;
    t0 = now_s();
    FerCurve parallel = run_fer_sweep(cfg);
    double tp = now_s() - t0;

    bool equal = serial.points[0].frames == parallel.points[0].frames &&
                 serial.points[0].frame_errors == parallel.points[0].frame_errors;
    std::printf("fer-sweep   quadratic(2) [50,25], 30000 frames @ 22 dB\n");
    std::printf("  serial    %.3fs  (%.0f frames/s)\n", ts, 30000.0 / ts);
    std::printf("  parallel  %.3fs  (%.0f frames/s)  speedup %.2fx  results %s\n\n", tp,
                30000.0 / tp, ts / tp, equal ? "identical" : "DIFFER");
  }

  {
    const long long trials = 20000000;
    SimRng rng{7};
    double t0 = now_s();
    double ci = 0;
    double p_serial = poltyrev_outage_mc(2, db_to_linear(28.0), trials, rng, &ci, 1);
    double ts = now_s() - t0;
    t0 = now_s();
    double p_par = poltyrev_outage_mc(2, db_to_linear(28.0), trials, rng, &ci, par);
    double tp = now_s() - t0;
    std::printf("outage-mc   n=2 @ 28 dB, %lld trials\n", trials);
    std::printf("  serial    %.3fs  (%.1f Mtrials/s)\n", ts, trials / ts / 1e6);
    std::printf("  parallel  %.3fs  (%.1f Mtrials/s)  speedup %.2fx  results %s\n", tp,
                trials / tp / 1e6, ts / tp, p_serial == p_par ? "identical" : "DIFFER");
  }
  return 0;
}

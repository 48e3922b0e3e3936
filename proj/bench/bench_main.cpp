// Timing harness for the OpenMP kernels against their serial references.
// Not wired into ctest; run directly:  cantorfour_bench [sweep_halfwidth]
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <vector>

#include "cantorfour/construction.hpp"
#include "cantorfour/dimension.hpp"
#include "cantorfour/fourier.hpp"
#include "cantorfour/measure.hpp"

using namespace cantorfour;
using clock_t_ = std::chrono::steady_clock;

namespace {

double seconds(clock_t_::time_point a, clock_t_::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

}  // namespace

int main(int argc, char** argv) {
    long halfwidth = argc > 1 ? std::atol(argv[1]) : 1024;
    if (halfwidth < 1) halfwidth = 1;

    ConstructionParams params = generate_sequence(Rational(1, 2), BigInt(16), 2);
    Measure mu = stage_measure(params, 2);
    std::printf("measure: %zu uniform parts, sweep half-width %ld, %d thread(s)\n",
                mu.uniform_parts().size(), halfwidth, omp_get_max_threads());

    std::vector<Frequency> ns;
    ns.reserve(static_cast<std::size_t>(2 * halfwidth + 1));
    for (long n = -halfwidth; n <= halfwidth; ++n) ns.emplace_back(n);

    auto t0 = clock_t_::now();
    auto serial = coefficients_batch_serial(mu, ns);
    auto t1 = clock_t_::now();
    auto parallel = coefficients_batch(mu, ns);
    auto t2 = clock_t_::now();

    bool same = serial.size() == parallel.size();
    for (std::size_t i = 0; same && i < serial.size(); ++i) {
        same = std::memcmp(&serial[i].value, &parallel[i].value, sizeof serial[i].value) == 0;
    }
    double ts = seconds(t0, t1), tp = seconds(t1, t2);
    std::printf("fourier sweep   serial %8.3f s   parallel %8.3f s   speedup %.2fx   %s\n", ts,
                tp, tp > 0 ? ts / tp : 0.0, same ? "bit-identical" : "MISMATCH");
    if (!same) return 1;

    Rational finest(1, 4097);
    auto a0 = clock_t_::now();
    DimensionReport rs = mass_ratio_audit(mu, Rational(2, 5), finest, &params, false);
    auto a1 = clock_t_::now();
    DimensionReport rp = mass_ratio_audit(mu, Rational(2, 5), finest, &params, true);
    auto a2 = clock_t_::now();

    bool rows_same = rs.per_scale.size() == rp.per_scale.size();
    for (std::size_t i = 0; rows_same && i < rs.per_scale.size(); ++i) {
        rows_same = rs.per_scale[i].scale == rp.per_scale[i].scale &&
                    std::memcmp(&rs.per_scale[i].max_ratio, &rp.per_scale[i].max_ratio,
                                sizeof(double)) == 0;
    }
    double as = seconds(a0, a1), ap = seconds(a1, a2);
    std::printf("mass audit      serial %8.3f s   parallel %8.3f s   speedup %.2fx   %s\n", as,
                ap, ap > 0 ? as / ap : 0.0, rows_same ? "bit-identical" : "MISMATCH");
    return rows_same ? 0 : 1;
}

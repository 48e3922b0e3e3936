#pragma once

#include <optional>
#include <vector>

#include "cantorfour/construction.hpp"
#include "cantorfour/measure.hpp"

namespace cantorfour {

// One scanned scale of the mass-distribution audit.  max_ratio is the exact
// sliding-window maximum of mu(I)/|I|^s, rounded toward zero; theoretical is
// the stage constant c_{k,s} * |I|^{1-s}-free form evaluated at this scale,
// rounded up, so a reported pass can never be a rounding artifact.
struct ScaleRow {
    Rational scale;
    double max_ratio = 0;
    std::optional<RationalInterval> achiever;
    std::optional<double> theoretical;
    bool bracket_extrapolated = false;  // scale finer than 1/N_depth
    bool pass = true;
};

struct DimensionReport {
    Rational s;
    double empirical_max_ratio = 0;
    std::optional<double> theoretical_c;  // at the scale achieving the max
    std::vector<ScaleRow> per_scale;
    std::vector<std::pair<Rational, long>> box_counts;
    std::optional<double> dimension_estimate;
    bool passed = true;
};

// c_{k,s} = N_1 * 4^k * (prod_{j<k} N_j)^delta * |I|^{1-s}, rounded up.
// Requires 1/N_k <= interval_length, and interval_length < 1/N_{k-1} for
// k >= 2; throws std::invalid_argument("scale outside stage bracket").
double theoretical_constant(const ConstructionParams& params, std::size_t k, const Rational& s,
                            const Rational& interval_length);

// The same constant at the bracket-bottom scale 1/N_k for k = 1..upto;
// decreasing in k over a valid construction.
std::vector<double> stage_constants(const ConstructionParams& params, const Rational& s,
                                    std::size_t upto);

// Scans window lengths 2, 1, 1/2, ... down to finest_scale (plus the stage
// scales 1/N_j, 1/L_j when params are given) and reports the exact maximum
// of mu(I)/|I|^s over all positions per scale.  The maximum over positions
// is exact: mu([t, t+l]) is piecewise linear in t with breakpoints only
// where a window edge meets a support endpoint or atom, and every breakpoint
// is evaluated in rational arithmetic.  Scales finer than 1/N_depth are
// compared against the extrapolated stage-depth constant and flagged.
DimensionReport mass_ratio_audit(const Measure& mu, const Rational& s,
                                 const Rational& finest_scale,
                                 const ConstructionParams* params = nullptr,
                                 bool parallel = true);

// Number of grid boxes of the given size (anchored at -1) meeting at least
// one interval of the family; exact, boundary touches count.
long box_count(const StageFamily& family, const Rational& scale);

// log(box_count at scale 1/L_k) / log(L_k) for the family's stage k.
double dimension_estimate(const ConstructionParams& params, const StageFamily& family);

}  // namespace cantorfour

#pragma once

#include <cstddef>
#include <vector>

#include "cantorfour/measure.hpp"

namespace cantorfour {

// Parameters of the nested grid-interval construction.  delta = 1 - alpha =
// p/q in lowest terms; N is strictly increasing; L_j is the least integer
// with L_j^q >= N_j^{q+p}, i.e. ceil(N_j^{1+delta}) computed by exact integer
// roots.  Stage-k intervals live on the grid 2Z/N_k with half-length
// 1/(2 L_k).
struct ConstructionParams {
    Rational alpha;
    Rational delta;
    std::vector<BigInt> N;
    std::vector<BigInt> L;

    std::size_t depth() const { return N.size(); }
};

// The least integer L with L^q >= n^{q+p} for delta = p/q.
BigInt ceil_power(const BigInt& n, const Rational& delta);

// Minimal sequence: each N_{k+1} is the least integer satisfying both the
// exact growth condition
//     (N_1 * 4^{k+2})^{qk} * (prod_{j<=k} N_j)^{pk}  <  N_{k+1}^q
// and the rapid-growth requirement N_{k+1} >= 12 * L_k, all checked in
// integer arithmetic.  alpha in (0,1), N1 >= 4.
ConstructionParams generate_sequence(const Rational& alpha, const BigInt& N1, std::size_t depth);

// Params from an explicitly given N list (e.g. N_j = 4^j with delta = 1).
// Validates monotonicity and computes L, but does not require the growth
// condition; alpha is recorded as 1 - delta and may be 0.
ConstructionParams explicit_family(const Rational& delta, std::vector<BigInt> N);

// Exact growth-condition check for step k -> k+1 (1-based k < depth()).
bool growth_condition_holds(const ConstructionParams& params, std::size_t k);

// Children per parent at stage k >= 2: floor(N_k / (2 L_{k-1})) - 3.
BigInt children_per_parent(const ConstructionParams& params, std::size_t k);

// Pruned: exactly children_per_parent leftmost contained children per parent
// (the measure-carrying families).  AllContained: every grid interval lying
// entirely inside a parent (the covering families; also the only feasible
// mode when the pruned count would be < 1, as for slowly growing N).
enum class StageMode { Pruned, AllContained };

struct StageFamily {
    std::size_t stage = 0;
    std::vector<RationalInterval> intervals;
    std::vector<std::size_t> parent_map;  // index into the stage-(k-1) family
};

// Builds stages 1..k (stage 0 is the full circle) and returns stage k.
// Stage 1 holds all N_1 grid intervals in either mode.  Throws
// std::invalid_argument on "M_k < 1" in pruned mode, and guards against
// materializing more than ~10^7 intervals.
StageFamily build_stage(const ConstructionParams& params, std::size_t k,
                        StageMode mode = StageMode::Pruned);

// Equal mass 1/|family| on each interval of the stage family.
Measure stage_measure(const ConstructionParams& params, std::size_t k,
                      StageMode mode = StageMode::Pruned);

// {x : dist(x, 2Z/N_j) * L_j <= t for all j <= J}, materialized as a sorted
// pairwise-disjoint interval family (touching pieces merged).
struct TruncationSet {
    Rational t;
    std::size_t J = 0;
    std::vector<RationalInterval> intervals;
};

TruncationSet truncation_set(const ConstructionParams& params, const Rational& t, std::size_t J);

// Exact sup over the arc (or point) of the distance to the grid 2Z/N.
Rational max_grid_deviation(const RationalInterval& iv, const BigInt& N);

// Max over every uniform-part arc and atom of mu.
Rational support_grid_deviation(const Measure& mu, const BigInt& N);

// dist(x, 2Z/N_j) * L_j <= 1/2 for every endpoint and center of the family,
// for every j <= upto; exact.
bool window_property_holds(const ConstructionParams& params, const StageFamily& family,
                           std::size_t upto);

}  // namespace cantorfour

#pragma once

#include <complex>
#include <vector>

#include "cantorfour/rational.hpp"

namespace cantorfour {

// Entries restricted to {-1, 0, 1}.
struct SignPattern {
    std::vector<int> eps;

    bool operator==(const SignPattern& o) const { return eps == o.eps; }
};

// Strictly increasing positive terms n_j with per-term amplitudes a_j,
// |a_j| <= 1 so the partial products stay nonnegative densities.
class LacunarySequence {
public:
    // Amplitudes default to 1 (the classical singular product).
    explicit LacunarySequence(std::vector<Frequency> terms);
    LacunarySequence(std::vector<Frequency> terms, std::vector<Rational> coefficients);

    const std::vector<Frequency>& terms() const { return terms_; }
    const std::vector<Rational>& coefficients() const { return coeffs_; }
    std::size_t size() const { return terms_.size(); }

private:
    std::vector<Frequency> terms_;
    std::vector<Rational> coeffs_;
};

struct OmegaPoint {
    Frequency value;  // sum of eps_j * n_j
    SignPattern pattern;
};

// True iff all 3^depth signed sums over the first `depth` terms are pairwise
// distinct.  n_{k+1} > 2 * sum of earlier terms is taken as a sufficient
// fast path; otherwise falls back to full enumeration (3^depth values).
bool is_dissociate(const LacunarySequence& seq, std::size_t depth);

// Every signed sum with its pattern, sorted by (value, pattern).  Size is
// exactly 3^depth, with duplicate values present when not dissociate.
std::vector<OmegaPoint> omega(const LacunarySequence& seq, std::size_t depth);

// Closed-form coefficient of the depth-truncated product at frequency n:
// (1/2) * product over represented terms of a_j/2 if n = sum eps_j n_j has a
// representation, else 0.  Exact.  Requires a dissociate prefix (throws
// std::invalid_argument("not dissociate") otherwise).
Rational riesz_coefficient(const LacunarySequence& seq, const Frequency& n, std::size_t depth);

// Pointwise value of the partial product  prod_{j<=depth} (1 + a_j cos(pi n_j x)).
double partial_density(const LacunarySequence& seq, std::size_t depth, const CirclePoint& x);

// Quadrature of (1/2) * integral e^{i pi n x} * partial_density * dx/2 over
// the circle, evaluated entirely in plain floating point as an independent
// cross-check of riesz_coefficient.  Bandwidth-limited: throws
// OracleInfeasible for |n| + sum of terms beyond ~2^20.
std::complex<double> riesz_density_quadrature(const LacunarySequence& seq, const Frequency& n,
                                              std::size_t depth);

}  // namespace cantorfour

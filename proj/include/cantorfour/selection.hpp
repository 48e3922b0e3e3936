#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "cantorfour/construction.hpp"
#include "cantorfour/measure.hpp"
#include "cantorfour/riesz.hpp"

namespace cantorfour {

// Inductive frequency selection: grow a subsequence (n_1, ..., n_K) of the
// candidate pool so that every signed sum shift + sum eps_j n_j keeps a
// provably nonzero Fourier coefficient, with the guarantee tracked through
// the gamma chain.

enum class SelectionMode { Lemma1, Lemma2 };

struct SelectionState {
    std::vector<Frequency> chosen;
    double gamma = 0;  // min |mu_hat| over all current signed sums
    Frequency shift = 0;
    Measure working_measure;
    Rational delta;
    SelectionMode mode = SelectionMode::Lemma1;
    // Lemma2: the support lies within t_k/L_j of each construction grid;
    // scales the perturbation bound.  Stays 1 in Lemma1 mode.
    Rational window_factor = 1;
};

struct CertificateEntry {
    SignPattern eps;
    Frequency freq;  // shift + signed sum
    std::complex<double> value;
};

struct SelectionCertificate {
    Frequency shift = 0;
    std::vector<Frequency> frequencies;
    std::vector<double> gamma_chain;  // gamma_0 ... gamma_{K-1}
    double lower_bound = 0;           // gamma_{K-1}/2 (Lemma1) or /6 (Lemma2)
    std::vector<CertificateEntry> table;  // all 3^K sums on the original mu
    std::vector<Rational> truncation_levels;  // t_k per step (Lemma2)
};

struct SelectionOptions {
    SelectionMode mode = SelectionMode::Lemma1;
    std::size_t depth = 0;
    Rational delta = Rational(1);
    std::vector<Frequency> candidates;  // sorted increasing
    std::optional<ConstructionParams> truncation_params;  // Lemma2
    std::optional<Frequency> force_shift;  // testing hook; skips the search
    Frequency search_radius = 64;          // for the shift search
    double table_tolerance = 1e-9;         // relative verification slack
};

// Smallest |n| <= search_radius with |mu_hat(n)| >= threshold, preferring
// the nonnegative one on ties.  Throws VerificationError("no nonzero
// coefficient found in radius") when the search is exhausted.
Frequency shift_to_nonzero(const Measure& mu, const Frequency& search_radius, double threshold);

// gamma = min over all 3^|chosen| sign patterns of |mu_hat(shift + sum)|.
// Throws VerificationError("vanishing coefficient") if any pattern falls
// below the machine-zero threshold 1e-13 * ‖μ‖.
double min_coefficient(const Measure& mu, const Frequency& shift,
                       const std::vector<Frequency>& chosen);

// Smallest candidate N exceeding all chosen frequencies with
//   N > 2 * (sum of chosen)                   (keeps the sums dissociate)
//   ‖μ‖ * pi * w / N^delta < gamma / b        (perturbation admissibility)
// where w is the state's window factor and b = 2 (Lemma1, w = 1) or
// b = 6 (Lemma2, w = t_k), evaluated with directed rounding.  In Lemma1
// mode every examined candidate must pass the exact window check
// dist(x, 2Z/N) * ceil(N^{1+delta}) <= 1/2 over the support.
Frequency next_frequency(const SelectionState& state, const std::vector<Frequency>& candidates,
                         const Rational& delta);

// The full induction; returns the certificate with all 3^depth coefficients
// evaluated on the original measure.
SelectionCertificate select(const Measure& mu, const SelectionOptions& options);

// All 3^|chosen| signed sums shift + sum eps_j n_j in pattern-enumeration
// order, with their patterns.
std::vector<std::pair<SignPattern, Frequency>> signed_sums(const Frequency& shift,
                                                           const std::vector<Frequency>& chosen);

}  // namespace cantorfour

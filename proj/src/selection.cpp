#include "cantorfour/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cantorfour/errors.hpp"
#include "cantorfour/fourier.hpp"
#include "cantorfour/precision.hpp"

namespace cantorfour {

std::vector<std::pair<SignPattern, Frequency>> signed_sums(const Frequency& shift,
                                                           const std::vector<Frequency>& chosen) {
    std::size_t k = chosen.size();
    std::size_t count = 1;
    for (std::size_t j = 0; j < k; ++j) count *= 3;
    std::vector<std::pair<SignPattern, Frequency>> out;
    out.reserve(count);
    std::vector<int> digits(k, 0);
    for (std::size_t idx = 0; idx < count; ++idx) {
        SignPattern pat;
        pat.eps.resize(k);
        Frequency f = shift;
        for (std::size_t j = 0; j < k; ++j) {
            int e = digits[j] - 1;
            pat.eps[j] = e;
            if (e > 0) f += chosen[j];
            if (e < 0) f -= chosen[j];
        }
        out.emplace_back(std::move(pat), std::move(f));
        for (std::size_t j = 0; j < k; ++j) {
            if (++digits[j] < 3) break;
            digits[j] = 0;
        }
    }
    return out;
}

Frequency shift_to_nonzero(const Measure& mu, const Frequency& search_radius, double threshold) {
    if (mu.is_zero()) {
        throw std::invalid_argument("zero measure has no nonzero coefficient");
    }
    for (Frequency a = 0; a <= search_radius; ++a) {
        if (std::abs(coefficient(mu, a).value) >= threshold) return a;
        if (sgn(a) != 0) {
            Frequency neg = -a;
            if (std::abs(coefficient(mu, neg).value) >= threshold) return neg;
        }
    }
    throw VerificationError("no nonzero coefficient found in radius");
}

double min_coefficient(const Measure& mu, const Frequency& shift,
                       const std::vector<Frequency>& chosen) {
    auto sums = signed_sums(shift, chosen);
    std::vector<Frequency> freqs;
    freqs.reserve(sums.size());
    for (auto& [pat, f] : sums) freqs.push_back(f);
    auto coeffs = coefficients_batch(mu, freqs);

    double zero = 1e-13 * mpq_get_d(total_variation(mu).get_mpq_t());
    double m = std::numeric_limits<double>::infinity();
    for (const FourierCoefficient& c : coeffs) {
        double a = std::abs(c.value);
        if (a < zero) throw VerificationError("vanishing coefficient");
        m = std::min(m, a);
    }
    return m;
}

namespace {

// Exact support window check: dist(x, 2Z/N) * ceil(N^{1+delta}) <= bound
// over the whole support of mu.
bool window_check(const Measure& mu, const Frequency& N, const Rational& delta,
                  const Rational& bound) {
    BigInt L = ceil_power(N, delta);
    Rational d = support_grid_deviation(mu, N);
    return d * L <= bound;
}

}  // namespace

Frequency next_frequency(const SelectionState& state, const std::vector<Frequency>& candidates,
                         const Rational& delta) {
    Rational tv = total_variation(state.working_measure);
    Frequency chosen_sum = 0;
    Frequency chosen_max = 0;
    for (const Frequency& n : state.chosen) {
        chosen_sum += n;
        chosen_max = std::max(chosen_max, n);
    }
    const int budget_divisor = state.mode == SelectionMode::Lemma2 ? 6 : 2;
    const Rational check_bound =
        state.mode == SelectionMode::Lemma2 ? state.window_factor : Rational(1, 2);

    for (const Frequency& N : candidates) {
        if (N <= chosen_max || N <= 2 * chosen_sum) continue;
        if (!window_check(state.working_measure, N, delta, check_bound)) {
            throw std::invalid_argument("window hypothesis violated for candidate " +
                                        N.get_str());
        }
        // ‖μ‖ * pi * w / N^delta < gamma / b, upper bound on the left.
        double lhs = perturbation_bound(tv * state.window_factor, N, delta, Round::Up);
        if (lhs < state.gamma / budget_divisor) return N;
    }
    throw VerificationError("no admissible candidate");
}

SelectionCertificate select(const Measure& mu, const SelectionOptions& options) {
    Rational tv = total_variation(mu);
    if (sgn(tv) == 0) throw std::invalid_argument("zero measure");
    double machine_zero = 1e-13 * mpq_get_d(tv.get_mpq_t());

    std::vector<Frequency> candidates = options.candidates;
    if (!std::is_sorted(candidates.begin(), candidates.end())) {
        throw std::invalid_argument("candidates must be sorted increasing");
    }
    if (options.mode == SelectionMode::Lemma2) {
        if (!options.truncation_params) {
            throw std::invalid_argument("lemma2 mode requires truncation params");
        }
        // The truncation sets only control distances to the construction
        // grids, so the pool is limited to the construction frequencies.
        const auto& N = options.truncation_params->N;
        std::vector<Frequency> filtered;
        for (const Frequency& c : candidates) {
            if (std::find(N.begin(), N.end(), c) != N.end()) filtered.push_back(c);
        }
        candidates = std::move(filtered);
    }

    SelectionCertificate cert;
    cert.shift = options.force_shift
                     ? *options.force_shift
                     : shift_to_nonzero(mu, options.search_radius, machine_zero);

    SelectionState state;
    state.shift = cert.shift;
    state.delta = options.delta;
    state.mode = options.mode;
    state.working_measure = mu;
    state.gamma = min_coefficient(mu, cert.shift, {});
    cert.gamma_chain.push_back(state.gamma);

    for (std::size_t step = 1; step <= options.depth; ++step) {
        double gamma_prev = cert.gamma_chain.back();

        if (options.mode == SelectionMode::Lemma2) {
            const ConstructionParams& params = *options.truncation_params;
            Rational bound = Rational(mpq_class(gamma_prev)) / 3;
            // Explicit return type: the subtraction must be evaluated before
            // its operands (one of them a temporary) go out of scope.
            auto trunc_defect = [&](const Rational& t) -> Rational {
                TruncationSet set = truncation_set(params, t, params.depth());
                return tv - total_variation(restrict(mu, set.intervals));
            };
            BigInt t(1);
            while (trunc_defect(Rational(t)) >= bound) {
                t *= 2;
                if (t > (BigInt(1) << 40)) {
                    throw VerificationError("no feasible truncation");
                }
            }
            // Least integer t with defect < bound (defect is nonincreasing).
            BigInt lo = t / 2, hi = t;
            while (hi - lo > 1) {
                BigInt mid = (lo + hi) / 2;
                if (trunc_defect(Rational(mid)) < bound) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            Rational t_k(hi);
            TruncationSet set = truncation_set(params, t_k, params.depth());
            state.working_measure = restrict(mu, set.intervals);
            state.window_factor = t_k;
            cert.truncation_levels.push_back(t_k);
        }

        state.gamma = gamma_prev;
        Frequency n_k = next_frequency(state, candidates, options.delta);

        // Step verification on the working measure: every new signed sum must
        // clear gamma_{k-1}/2.
        std::vector<Frequency> trial = state.chosen;
        trial.push_back(n_k);
        double step_min = min_coefficient(state.working_measure, cert.shift, trial);
        if (step_min < (gamma_prev / 2) * (1 - options.table_tolerance)) {
            throw VerificationError("verification failed");
        }

        state.chosen = std::move(trial);
        cert.frequencies.push_back(n_k);
        if (step < options.depth) {
            // gamma for the next step is remeasured on the original measure.
            cert.gamma_chain.push_back(min_coefficient(mu, cert.shift, state.chosen));
        }
    }

    cert.lower_bound = options.depth == 0
                           ? cert.gamma_chain.back()
                           : cert.gamma_chain.back() /
                                 (options.mode == SelectionMode::Lemma2 ? 6 : 2);

    auto sums = signed_sums(cert.shift, cert.frequencies);
    std::vector<Frequency> freqs;
    freqs.reserve(sums.size());
    for (auto& [pat, f] : sums) freqs.push_back(f);
    auto values = coefficients_batch(mu, freqs);
    cert.table.reserve(sums.size());
    for (std::size_t i = 0; i < sums.size(); ++i) {
        if (std::abs(values[i].value) < cert.lower_bound * (1 - options.table_tolerance)) {
            throw VerificationError("certificate verification failed");
        }
        cert.table.push_back({std::move(sums[i].first), std::move(freqs[i]), values[i].value});
    }
    return cert;
}

}  // namespace cantorfour

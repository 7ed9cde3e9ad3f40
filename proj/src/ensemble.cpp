#include "ablsem/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace ablsem {

namespace {

// Slack for comparing a deviation with k * sigma when sigma is exactly zero.
constexpr double kComparisonSlack = 1e-12;

std::vector<double> basis_probabilities(const std::vector<PureState>& basis, const PureState& state) {
    std::vector<double> probs(basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) {
        probs[k] = std::norm(inner_product(basis[k], state));
    }
    return probs;
}

// Zero-probability entries can never be selected.
std::size_t sample_index(const std::vector<double>& probs, double u) {
    double cumulative = 0.0;
    std::size_t last_possible = 0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        if (probs[k] <= 0.0) {
            continue;
        }
        cumulative += probs[k];
        last_possible = k;
        if (u < cumulative) {
            return k;
        }
    }
    return last_possible;
}

struct ChunkTally {
    std::uint64_t postselected = 0;
    std::vector<std::uint64_t> counts;
};

} // namespace

TrialRunner::TrialRunner(const TwoStateVector& tsv, const Observable* intermediate) {
    const auto post_basis = complete_basis(tsv.post());
    if (intermediate == nullptr) {
        post_probs_.push_back(basis_probabilities(post_basis, tsv.pre()));
        return;
    }
    if (intermediate->dim() != tsv.dim()) {
        throw InputError("observable '" + intermediate->name() +
                         "' does not match the two-state vector dimension");
    }
    intermediate_probs_.resize(intermediate->dim());
    post_probs_.resize(intermediate->dim());
    for (std::size_t k = 0; k < intermediate->dim(); ++k) {
        intermediate_probs_[k] = born_probability(tsv.pre(), *intermediate, k);
        if (intermediate_probs_[k] > 0.0) {
            post_probs_[k] = basis_probabilities(post_basis, intermediate->eigenvector(k));
        } else {
            post_probs_[k].assign(post_basis.size(), 0.0);
        }
    }
}

TrialOutcome TrialRunner::run(DrawSource& draws) const {
    TrialOutcome out;
    std::size_t branch = 0;
    if (measures()) {
        branch = sample_index(intermediate_probs_, draws.uniform());
        out.outcome = branch;
    }
    out.postselected = sample_index(post_probs_[branch], draws.uniform()) == 0;
    return out;
}

TrialOutcome run_trial(const TwoStateVector& tsv, const Observable* intermediate, DrawSource& draws) {
    return TrialRunner(tsv, intermediate).run(draws);
}

EnsembleResult simulate_ensemble(const TwoStateVector& tsv, const Observable* intermediate,
                                 std::uint64_t n_runs, std::uint64_t master_seed,
                                 unsigned workers) {
    if (n_runs == 0) {
        throw InputError("simulate_ensemble: n_runs must be at least 1");
    }
    const TrialRunner runner(tsv, intermediate);
    const std::size_t n_outcomes = intermediate != nullptr ? intermediate->dim() : 0;
    const std::uint64_t n_chunks = (n_runs + kTrialsPerChunk - 1) / kTrialsPerChunk;

    std::vector<ChunkTally> chunks(n_chunks);
    auto run_chunk = [&](std::uint64_t c) {
        DrawSource draws(derive_seed(master_seed, c));
        ChunkTally tally;
        tally.counts.assign(n_outcomes, 0);
        const std::uint64_t begin = c * kTrialsPerChunk;
        const std::uint64_t end = std::min(n_runs, begin + kTrialsPerChunk);
        for (std::uint64_t t = begin; t < end; ++t) {
            const auto trial = runner.run(draws);
            if (!trial.postselected) {
                continue;
            }
            ++tally.postselected;
            if (trial.outcome) {
                ++tally.counts[*trial.outcome];
            }
        }
        chunks[c] = std::move(tally);
    };

    if (workers == 0) {
        workers = std::max(1u, std::thread::hardware_concurrency());
    }
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, n_chunks));
    if (workers <= 1) {
        for (std::uint64_t c = 0; c < n_chunks; ++c) {
            run_chunk(c);
        }
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::uint64_t c = next++; c < n_chunks; c = next++) {
                    run_chunk(c);
                }
            });
        }
    }

    EnsembleResult result;
    result.total_runs = n_runs;
    result.master_seed = master_seed;
    std::vector<std::uint64_t> counts(n_outcomes, 0);
    for (const auto& chunk : chunks) {
        result.postselected_runs += chunk.postselected;
        for (std::size_t k = 0; k < n_outcomes; ++k) {
            counts[k] += chunk.counts[k];
        }
    }
    result.postselection_rate =
        static_cast<double>(result.postselected_runs) / static_cast<double>(result.total_runs);
    if (intermediate != nullptr) {
        result.intermediate = intermediate->name();
        for (std::size_t k = 0; k < n_outcomes; ++k) {
            const double freq = result.postselected_runs > 0
                                    ? static_cast<double>(counts[k]) /
                                          static_cast<double>(result.postselected_runs)
                                    : 0.0;
            result.outcomes.push_back({intermediate->label(k), counts[k], freq});
        }
    }
    return result;
}

AblComparison compare_with_abl(const EnsembleResult& result, const AblDistribution& dist,
                               double sigma_level) {
    if (!result.intermediate) {
        throw InputError("compare_with_abl: the ensemble did not perform an intermediate measurement");
    }
    if (*result.intermediate != dist.observable || result.outcomes.size() != dist.entries.size()) {
        throw InputError("compare_with_abl: ensemble measured '" + *result.intermediate +
                         "' but the distribution is for '" + dist.observable + "'");
    }
    if (result.postselected_runs == 0) {
        throw Error(ErrorKind::no_data, "compare_with_abl: no run was post-selected");
    }
    AblComparison cmp;
    cmp.observable = dist.observable;
    cmp.postselected_runs = result.postselected_runs;
    cmp.sigma_level = sigma_level;
    cmp.pass = true;
    const auto m = static_cast<double>(result.postselected_runs);
    for (std::size_t k = 0; k < dist.entries.size(); ++k) {
        if (result.outcomes[k].label != dist.entries[k].label) {
            throw InputError("compare_with_abl: outcome order differs at index " + std::to_string(k));
        }
        OutcomeComparison row;
        row.label = dist.entries[k].label;
        row.frequency = result.outcomes[k].conditional_frequency;
        row.abl = dist.entries[k].probability;
        row.deviation = std::abs(row.frequency - row.abl);
        row.std_error = std::sqrt(std::max(0.0, row.abl * (1.0 - row.abl)) / m);
        row.pass = row.deviation <= sigma_level * row.std_error + kComparisonSlack;
        cmp.pass = cmp.pass && row.pass;
        cmp.outcomes.push_back(std::move(row));
    }
    return cmp;
}

RateComparison compare_rate(const EnsembleResult& result, double expected, double sigma_level) {
    RateComparison cmp;
    cmp.expected = expected;
    cmp.observed = result.postselection_rate;
    cmp.deviation = std::abs(cmp.observed - expected);
    cmp.std_error = std::sqrt(std::max(0.0, expected * (1.0 - expected)) /
                              static_cast<double>(result.total_runs));
    cmp.pass = cmp.deviation <= sigma_level * cmp.std_error + kComparisonSlack;
    return cmp;
}

DisturbanceCheck check_disturbance(const TwoStateVector& tsv, const Observable& obs,
                                   std::uint64_t n_runs, std::uint64_t master_seed,
                                   unsigned workers, double sigma_level) {
    DisturbanceCheck check;
    check.analytic = disturbance(tsv, obs);
    check.measured = simulate_ensemble(tsv, &obs, n_runs, master_seed, workers);
    check.unmeasured = simulate_ensemble(tsv, nullptr, n_runs, splitmix64(master_seed), workers);
    check.measured_rate = compare_rate(check.measured, postselection_prob(tsv, obs), sigma_level);
    check.unmeasured_rate = compare_rate(check.unmeasured, postselection_prob(tsv), sigma_level);
    check.empirical =
        std::abs(check.measured.postselection_rate - check.unmeasured.postselection_rate);
    check.std_error = std::hypot(check.measured_rate.std_error, check.unmeasured_rate.std_error);
    check.pass = std::abs(check.empirical - check.analytic) <=
                 sigma_level * check.std_error + kComparisonSlack;
    return check;
}

} // namespace ablsem

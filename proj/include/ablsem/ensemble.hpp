#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ablsem/abl.hpp"
#include "ablsem/rng.hpp"

namespace ablsem {

/// Master seed used when the caller does not pick one.
inline constexpr std::uint64_t kDefaultSeed = 19980601;

/// Trials per independently seeded chunk. Fixed so results do not depend on scheduling.
inline constexpr std::uint64_t kTrialsPerChunk = 8192;

inline constexpr double kDefaultSigmaLevel = 3.0;

struct TrialOutcome {
    bool postselected = false;
    /// Index of the intermediate outcome; present iff the intermediate measurement ran.
    std::optional<std::size_t> outcome;
};

/**
 * One pre-selected system: optional intermediate measurement, then a
 * measurement in an orthonormal basis whose first element is |b>.
 *
 * Branch probabilities are computed once at construction; each call to
 * run() consumes draws from the given source.
 */
class TrialRunner {
  public:
    /// `intermediate` may be null (no measurement at the intermediate time).
    TrialRunner(const TwoStateVector& tsv, const Observable* intermediate);

    TrialOutcome run(DrawSource& draws) const;

    [[nodiscard]] bool measures() const noexcept { return !intermediate_probs_.empty(); }

  private:
    // Born probabilities of the intermediate outcomes (empty when unmeasured).
    std::vector<double> intermediate_probs_;
    // Post-selection basis probabilities, one row per branch state.
    std::vector<std::vector<double>> post_probs_;
};

TrialOutcome run_trial(const TwoStateVector& tsv, const Observable* intermediate, DrawSource& draws);

struct OutcomeTally {
    std::string label;
    std::uint64_t count = 0;
    /// count / postselected_runs, or 0 when nothing was post-selected.
    double conditional_frequency = 0.0;

    friend bool operator==(const OutcomeTally&, const OutcomeTally&) = default;
};

struct EnsembleResult {
    std::uint64_t total_runs = 0;
    std::uint64_t postselected_runs = 0;
    /// Name of the intermediate observable; empty optional when unmeasured.
    std::optional<std::string> intermediate;
    /// Post-selected runs by intermediate outcome, in observable order. Empty when unmeasured.
    std::vector<OutcomeTally> outcomes;
    double postselection_rate = 0.0;
    std::uint64_t master_seed = 0;

    friend bool operator==(const EnsembleResult&, const EnsembleResult&) = default;
};

/// `workers` = 0 picks the hardware concurrency. The result does not depend on it.
EnsembleResult simulate_ensemble(const TwoStateVector& tsv, const Observable* intermediate,
                                 std::uint64_t n_runs, std::uint64_t master_seed,
                                 unsigned workers = 0);

struct OutcomeComparison {
    std::string label;
    double frequency = 0.0;
    double abl = 0.0;
    double deviation = 0.0;
    /// sqrt(p (1 - p) / M) at the ABL value p.
    double std_error = 0.0;
    bool pass = false;
};

struct AblComparison {
    std::string observable;
    std::uint64_t postselected_runs = 0;
    double sigma_level = kDefaultSigmaLevel;
    std::vector<OutcomeComparison> outcomes;
    bool pass = false;
};

/// Per-outcome binomial test of conditional frequencies against ABL values.
AblComparison compare_with_abl(const EnsembleResult& result, const AblDistribution& dist,
                               double sigma_level = kDefaultSigmaLevel);

struct RateComparison {
    double expected = 0.0;
    double observed = 0.0;
    double deviation = 0.0;
    double std_error = 0.0;
    bool pass = false;
};

/// Binomial test of the observed post-selection rate against `expected`.
RateComparison compare_rate(const EnsembleResult& result, double expected,
                            double sigma_level = kDefaultSigmaLevel);

struct DisturbanceCheck {
    double analytic = 0.0;
    double empirical = 0.0;
    double std_error = 0.0;
    bool pass = false;
    EnsembleResult measured;
    EnsembleResult unmeasured;
    RateComparison measured_rate;
    RateComparison unmeasured_rate;
};

/// Runs both arms (with and without measuring `obs`) and compares the rate gap
/// with disturbance(tsv, obs). The unmeasured arm uses a seed derived from `master_seed`.
DisturbanceCheck check_disturbance(const TwoStateVector& tsv, const Observable& obs,
                                   std::uint64_t n_runs, std::uint64_t master_seed,
                                   unsigned workers = 0, double sigma_level = kDefaultSigmaLevel);

} // namespace ablsem

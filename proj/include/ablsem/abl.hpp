#pragma once

#include <array>
#include <string>
#include <vector>

#include "ablsem/quantum.hpp"

namespace ablsem {

/// Default probability-1 tolerance when flagging elements of reality.
inline constexpr double kDefaultRealityTolerance = 1e-9;

/**
 * Pre-selected state |a> at t1 and post-selected state |b> at t2.
 *
 * The timeline holds three distinct symbolic labels ordered as
 * (pre-selection, intermediate, post-selection). No evolution happens
 * between the three times.
 */
class TwoStateVector {
  public:
    using Timeline = std::array<std::string, 3>;

    TwoStateVector(PureState pre, PureState post, Timeline timeline = {"t1", "t", "t2"});

    [[nodiscard]] const PureState& pre() const noexcept { return pre_; }
    [[nodiscard]] const PureState& post() const noexcept { return post_; }
    [[nodiscard]] std::size_t dim() const noexcept { return pre_.dim(); }
    [[nodiscard]] const Timeline& timeline() const noexcept { return timeline_; }

  private:
    PureState pre_;
    PureState post_;
    Timeline timeline_;
};

struct AblEntry {
    std::string label;
    double probability = 0.0;

    friend bool operator==(const AblEntry&, const AblEntry&) = default;
};

/// Outcome probabilities of an intermediate measurement, in the observable's outcome order.
struct AblDistribution {
    std::string observable;
    std::vector<AblEntry> entries;
    /// sum_k |<b|c_k>|^2 |<c_k|a>|^2
    double denominator = 0.0;

    friend bool operator==(const AblDistribution&, const AblDistribution&) = default;
};

/// Probability of outcome j given pre- and post-selection. Throws UndefinedConditional
/// when no intermediate outcome is compatible with the post-selection.
double abl_probability(const TwoStateVector& tsv, const Observable& obs, std::size_t j);

AblDistribution abl_distribution(const TwoStateVector& tsv, const Observable& obs);

/// |<b|a>|^2: post-selection succeeds with no intermediate measurement.
double postselection_prob(const TwoStateVector& tsv);

/// sum_k |<b|c_k>|^2 |<c_k|a>|^2: post-selection succeeds after measuring `intermediate`.
double postselection_prob(const TwoStateVector& tsv, const Observable& intermediate);

/// Change in post-selection probability caused by measuring `obs` at the intermediate time.
double disturbance(const TwoStateVector& tsv, const Observable& obs);

} // namespace ablsem

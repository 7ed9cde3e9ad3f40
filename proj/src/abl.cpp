#include "ablsem/abl.hpp"

#include <cmath>
#include <set>

namespace ablsem {

namespace {

void require_matching(const TwoStateVector& tsv, const Observable& obs) {
    if (obs.dim() != tsv.dim()) {
        throw InputError("observable '" + obs.name() + "' has dimension " +
                         std::to_string(obs.dim()) + " but the two-state vector has dimension " +
                         std::to_string(tsv.dim()));
    }
}

// |<b|c_k>|^2 |<c_k|a>|^2 for every k.
std::vector<double> joint_weights(const TwoStateVector& tsv, const Observable& obs) {
    require_matching(tsv, obs);
    std::vector<double> weights(obs.dim());
    for (std::size_t k = 0; k < obs.dim(); ++k) {
        const auto& ck = obs.eigenvector(k);
        weights[k] = std::norm(inner_product(tsv.post(), ck)) * std::norm(inner_product(ck, tsv.pre()));
    }
    return weights;
}

double sum(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) {
        s += x;
    }
    return s;
}

[[noreturn]] void throw_undefined(const Observable& obs, double denominator) {
    throw UndefinedConditional("ABL probabilities for '" + obs.name() +
                                   "' are undefined: the post-selection is impossible after "
                                   "every intermediate outcome",
                               denominator);
}

} // namespace

TwoStateVector::TwoStateVector(PureState pre, PureState post, Timeline timeline)
    : pre_(std::move(pre)), post_(std::move(post)), timeline_(std::move(timeline)) {
    if (pre_.dim() != post_.dim()) {
        throw InputError("pre- and post-selected states differ in dimension (" +
                         std::to_string(pre_.dim()) + " vs " + std::to_string(post_.dim()) + ")");
    }
    const std::set<std::string> distinct(timeline_.begin(), timeline_.end());
    if (distinct.size() != timeline_.size() || distinct.contains("")) {
        throw InputError("timeline labels must be three distinct non-empty labels");
    }
}

double abl_probability(const TwoStateVector& tsv, const Observable& obs, std::size_t j) {
    const auto weights = joint_weights(tsv, obs);
    if (j >= weights.size()) {
        throw InputError("outcome index " + std::to_string(j) + " out of range for observable '" +
                         obs.name() + "'");
    }
    const double denominator = sum(weights);
    if (denominator <= kZeroProbability) {
        throw_undefined(obs, denominator);
    }
    return weights[j] / denominator;
}

AblDistribution abl_distribution(const TwoStateVector& tsv, const Observable& obs) {
    const auto weights = joint_weights(tsv, obs);
    const double denominator = sum(weights);
    if (denominator <= kZeroProbability) {
        throw_undefined(obs, denominator);
    }
    AblDistribution dist{obs.name(), {}, denominator};
    dist.entries.reserve(weights.size());
    for (std::size_t k = 0; k < weights.size(); ++k) {
        dist.entries.push_back({obs.label(k), weights[k] / denominator});
    }
    return dist;
}

double postselection_prob(const TwoStateVector& tsv) {
    return std::norm(inner_product(tsv.post(), tsv.pre()));
}

double postselection_prob(const TwoStateVector& tsv, const Observable& intermediate) {
    return sum(joint_weights(tsv, intermediate));
}

double disturbance(const TwoStateVector& tsv, const Observable& obs) {
    return std::abs(postselection_prob(tsv, obs) - postselection_prob(tsv));
}

} // namespace ablsem

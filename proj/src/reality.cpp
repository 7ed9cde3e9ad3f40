#include "ablsem/reality.hpp"

#include "ablsem/similarity.hpp"

namespace ablsem {

CounterfactualValidity counterfactual_validity(const TwoStateVector& tsv, const Observable& obs) {
    CounterfactualValidity out;
    out.disturbance = disturbance(tsv, obs);
    if (postselection_prob(tsv) <= kZeroProbability) {
        out.status = CounterfactualStatus::no_actual_world;
        return out;
    }
    const auto space = build_world_space(tsv, obs);
    const auto spheres = natural_spheres(space);
    out.cotenable = cotenable(space.same_post_outcome(), space.antecedent(), spheres);
    out.counterfactual = eval_counterfactual(space.antecedent(), space.abl_governs(), spheres);
    out.status = out.counterfactual == Verdict::fails ? CounterfactualStatus::invalid
                                                      : CounterfactualStatus::valid;
    return out;
}

RealityReport elements_of_reality(const TwoStateVector& tsv, std::span<const Observable> observables,
                                  double tol) {
    if (!(tol > 0.0 && tol <= 1e-6)) {
        throw InputError("elements_of_reality: tolerance must lie in (0, 1e-6]");
    }
    RealityReport report;
    report.tolerance = tol;
    for (const auto& obs : observables) {
        if (obs.dim() != tsv.dim()) {
            throw InputError("observable '" + obs.name() + "' does not match the two-state vector dimension");
        }
        AblDistribution dist;
        try {
            dist = abl_distribution(tsv, obs);
        } catch (const UndefinedConditional& e) {
            report.undefined.push_back({obs.name(), e.denominator()});
            continue;
        }
        std::optional<CounterfactualValidity> validity;
        for (const auto& entry : dist.entries) {
            if (entry.probability < 1.0 - tol) {
                continue;
            }
            if (!validity) {
                validity = counterfactual_validity(tsv, obs);
            }
            report.entries.push_back({obs.name(), entry.label, entry.probability, *validity});
        }
    }
    return report;
}

std::string to_string(CounterfactualStatus s) {
    switch (s) {
    case CounterfactualStatus::valid:
        return "valid-as-counterfactual";
    case CounterfactualStatus::invalid:
        return "invalid-as-counterfactual";
    case CounterfactualStatus::no_actual_world:
        return "no-actual-world";
    }
    return "unknown";
}

} // namespace ablsem

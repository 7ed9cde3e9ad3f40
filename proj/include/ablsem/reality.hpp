#pragma once

#include <span>
#include <string>
#include <vector>

#include "ablsem/abl.hpp"
#include "ablsem/worlds.hpp"

namespace ablsem {

enum class CounterfactualStatus {
    /// P []-> Q holds under the natural similarity relation.
    valid,
    /// P []-> Q fails: T is not cotenable with P.
    invalid,
    /// The factual pre/post-selection is impossible, so there is no actual world.
    no_actual_world,
};

struct CounterfactualValidity {
    CounterfactualStatus status = CounterfactualStatus::invalid;
    bool cotenable = false;
    Verdict counterfactual = Verdict::fails;
    double disturbance = 0.0;
};

/// Evaluates "had `obs` been measured, its statistics would follow the ABL rule"
/// at the actual world under the natural similarity relation.
CounterfactualValidity counterfactual_validity(const TwoStateVector& tsv, const Observable& obs);

struct RealityEntry {
    std::string observable;
    std::string label;
    double probability = 0.0;
    CounterfactualValidity validity;
};

struct UndefinedObservable {
    std::string observable;
    double denominator = 0.0;
};

struct RealityReport {
    double tolerance = kDefaultRealityTolerance;
    std::vector<RealityEntry> entries;
    std::vector<UndefinedObservable> undefined;
};

/// Every outcome with ABL probability >= 1 - tol, each paired with the
/// counterfactual validity of its observable. Observables with an undefined
/// ABL distribution are listed separately.
RealityReport elements_of_reality(const TwoStateVector& tsv, std::span<const Observable> observables,
                                  double tol = kDefaultRealityTolerance);

std::string to_string(CounterfactualStatus s);

} // namespace ablsem

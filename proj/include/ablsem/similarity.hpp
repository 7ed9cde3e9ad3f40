#pragma once

#include <string>
#include <vector>

#include "ablsem/worlds.hpp"

namespace ablsem {

/// Likelihoods within this distance are treated as equal.
inline constexpr double kTieTolerance = 1e-9;

/// Center alone, then every possible P-world (T and not-T alike), then every possible world.
SphereSystem natural_spheres(const WorldSpace& space);

/// Center alone, then the possible P & T worlds, then every possible world.
/// Throws closest_world_nonexistent when no possible P & T world exists.
SphereSystem z_spheres(const WorldSpace& space);

/// Center alone, then the possible worlds grouped by descending likelihood;
/// likelihoods within `tol` of a group's largest share its sphere.
SphereSystem likelihood_spheres(const WorldSpace& space, double tol = kTieTolerance);

enum class CheckOutcome { pass, fail, tie };

/// Likelihood of x against not-x, both conditioned on the antecedent context p.
struct LikelihoodCheck {
    std::string proposition;
    double prob_x = 0.0;
    double prob_not_x = 0.0;
    CheckOutcome outcome = CheckOutcome::tie;
};

/// Throws UndefinedConditional if the worlds of `p` carry no likelihood.
LikelihoodCheck likelihood_criterion(const Proposition& x, const Proposition& p, const WorldSpace& space,
                       double tol = kTieTolerance);

struct LikelihoodPair {
    WorldId closer = 0;
    WorldId farther = 0;
    double closer_likelihood = 0.0;
    double farther_likelihood = 0.0;
};

enum class AuditVerdict { justified, unjustified, degenerate_tie };

struct SimilarityAudit {
    std::string relation;
    /// Non-center pairs where the strictly closer world is strictly less likely.
    std::vector<LikelihoodPair> violations;
    /// Non-center pairs in different spheres whose likelihoods tie.
    std::vector<LikelihoodPair> ties;
    std::vector<LikelihoodCheck> likelihood_checks;
    /// The smallest P-permitting sphere holds only X-worlds among the P-worlds
    /// while some possible P & ~X world lies outside it.
    bool stacks_x = false;
    AuditVerdict verdict = AuditVerdict::justified;
};

/**
 * Checks a sphere system against comparative likelihood.
 *
 * Ranks compare the smallest sphere containing each world; the center is
 * excluded from pairs since it is closest by definition. The verdict comes
 * from the LikelihoodCheck of `x` (by default T, sharing the actual post outcome)
 * given P: a failure is unjustified, an equality within tolerance is a
 * degenerate tie.
 */
SimilarityAudit audit_spheres(std::string relation, const SphereSystem& s, const WorldSpace& space,
                              std::optional<Proposition> x = std::nullopt,
                              double tol = kTieTolerance);

std::string to_string(CheckOutcome o);
std::string to_string(AuditVerdict v);

} // namespace ablsem

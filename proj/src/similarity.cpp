#include "ablsem/similarity.hpp"

#include <algorithm>
#include <cmath>

namespace ablsem {

namespace {

// Drops spheres equal to their predecessor.
SphereSystem make_system(WorldId center, std::vector<WorldSet> spheres) {
    SphereSystem s{center, {}};
    for (auto sphere : spheres) {
        if (s.spheres.empty() || s.spheres.back() != sphere) {
            s.spheres.push_back(sphere);
        }
    }
    return s;
}

void require_tolerance(double tol) {
    if (!(tol > 0.0 && tol <= 1e-6)) {
        throw InputError("tolerance must lie in (0, 1e-6]");
    }
}

} // namespace

SphereSystem natural_spheres(const WorldSpace& space) {
    const auto center = WorldSet::of({space.actual()});
    const auto possible = space.possible();
    return make_system(space.actual(),
                       {center, center | (possible & space.antecedent().extension), center | possible});
}

SphereSystem z_spheres(const WorldSpace& space) {
    const auto center = WorldSet::of({space.actual()});
    const auto possible = space.possible();
    const auto closest = possible & space.antecedent().extension & space.same_post_outcome().extension;
    if (closest.empty()) {
        throw Error(ErrorKind::closest_world_nonexistent,
                    "no possible world has the antecedent together with the actual post-selection "
                    "outcome; the post-selected state is orthogonal to every reachable "
                    "intermediate state");
    }
    return make_system(space.actual(), {center, center | closest, center | possible});
}

SphereSystem likelihood_spheres(const WorldSpace& space, double tol) {
    require_tolerance(tol);
    std::vector<WorldId> order;
    for (auto id : (space.possible() - WorldSet::of({space.actual()})).ids()) {
        order.push_back(id);
    }
    std::stable_sort(order.begin(), order.end(), [&](WorldId a, WorldId b) {
        return space.world(a).likelihood > space.world(b).likelihood;
    });
    std::vector<WorldSet> spheres{WorldSet::of({space.actual()})};
    std::size_t k = 0;
    while (k < order.size()) {
        const double top = space.world(order[k]).likelihood;
        WorldSet next = spheres.back();
        while (k < order.size() && space.world(order[k]).likelihood >= top - tol) {
            next.insert(order[k]);
            ++k;
        }
        spheres.push_back(next);
    }
    return make_system(space.actual(), std::move(spheres));
}

LikelihoodCheck likelihood_criterion(const Proposition& x, const Proposition& p, const WorldSpace& space, double tol) {
    const double total = space.total_likelihood(p.extension);
    if (total <= kZeroProbability) {
        throw UndefinedConditional("the antecedent '" + p.name + "' carries no likelihood", total);
    }
    LikelihoodCheck check;
    check.proposition = x.name;
    check.prob_x = space.total_likelihood(p.extension & x.extension) / total;
    check.prob_not_x = space.total_likelihood(p.extension - x.extension) / total;
    if (std::abs(check.prob_x - check.prob_not_x) <= tol) {
        check.outcome = CheckOutcome::tie;
    } else {
        check.outcome = check.prob_x > check.prob_not_x ? CheckOutcome::pass : CheckOutcome::fail;
    }
    return check;
}

SimilarityAudit audit_spheres(std::string relation, const SphereSystem& s, const WorldSpace& space,
                              std::optional<Proposition> x, double tol) {
    if (const auto violations = validate_spheres(s); !violations.empty()) {
        throw InputError("invalid sphere system: " + violations.front().message);
    }
    const Proposition p = space.antecedent();
    const Proposition similarity = x.value_or(space.same_post_outcome());

    SimilarityAudit audit;
    audit.relation = std::move(relation);

    std::vector<std::pair<WorldId, std::size_t>> ranked;
    for (auto id : s.accessible().ids()) {
        if (id != s.center) {
            ranked.emplace_back(id, *s.rank_of(id));
        }
    }
    for (const auto& [w, rw] : ranked) {
        for (const auto& [v, rv] : ranked) {
            if (rw >= rv) {
                continue;
            }
            const LikelihoodPair pair{w, v, space.world(w).likelihood, space.world(v).likelihood};
            if (pair.closer_likelihood < pair.farther_likelihood - tol) {
                audit.violations.push_back(pair);
            } else if (std::abs(pair.closer_likelihood - pair.farther_likelihood) <= tol) {
                audit.ties.push_back(pair);
            }
        }
    }

    for (auto sphere : s.spheres) {
        if (!sphere.intersects(p.extension)) {
            continue;
        }
        const auto p_worlds = sphere & p.extension;
        const auto outside = (space.possible() & p.extension) - similarity.extension - sphere;
        audit.stacks_x = p_worlds.subset_of(similarity.extension) && !outside.empty();
        break;
    }

    audit.likelihood_checks.push_back(likelihood_criterion(similarity, p, space, tol));
    audit.verdict = AuditVerdict::justified;
    for (const auto& check : audit.likelihood_checks) {
        if (check.outcome == CheckOutcome::fail) {
            audit.verdict = AuditVerdict::unjustified;
            break;
        }
        if (check.outcome == CheckOutcome::tie) {
            audit.verdict = AuditVerdict::degenerate_tie;
        }
    }
    return audit;
}

std::string to_string(CheckOutcome o) {
    switch (o) {
    case CheckOutcome::pass:
        return "pass";
    case CheckOutcome::fail:
        return "fail";
    case CheckOutcome::tie:
        return "tie";
    }
    return "unknown";
}

std::string to_string(AuditVerdict v) {
    switch (v) {
    case AuditVerdict::justified:
        return "justified";
    case AuditVerdict::unjustified:
        return "unjustified";
    case AuditVerdict::degenerate_tie:
        return "degenerate-tie";
    }
    return "unknown";
}

} // namespace ablsem

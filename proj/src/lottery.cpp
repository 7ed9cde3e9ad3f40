#include "ablsem/lottery.hpp"

namespace ablsem {

ClassicalModel lottery_model(std::uint64_t entrants) {
    if (entrants < 2) {
        throw InputError("lottery: at least 2 entrants are needed for losing to be possible");
    }
    const double win = 1.0 / static_cast<double>(entrants);
    ClassicalModel model;
    model.contexts.push_back({"field", false, {{"lose", 1.0 - win}, {"win", win}}});
    model.contexts.push_back({"sole-entrant", true, {{"win", 1.0}, {"lose", 0.0}}});
    model.actual_outcome = "lose";
    return model;
}

LotteryReport evaluate_lottery(std::uint64_t entrants) {
    const auto model = lottery_model(entrants);
    const auto space = build_classical_world_space(model);
    const auto p = space.antecedent();
    const auto win = space.post_outcome_is("win");
    const auto lose = space.post_outcome_is("lose");

    LotteryReport report;
    report.entrants = entrants;
    report.factual_lose = model.contexts[0].outcomes[0].likelihood;
    report.factual_win = model.contexts[0].outcomes[1].likelihood;
    report.sole_entrant_win = model.contexts[1].outcomes[0].likelihood;
    report.sole_entrant_lose = model.contexts[1].outcomes[1].likelihood;
    report.losing_given_sole_entry = likelihood_criterion({"L", lose.extension}, p, space);

    // Sole-entrant relation: the closest antecedent worlds are those where I am the
    // only entrant, which here are all antecedent worlds.
    auto arm = [&](std::string relation, SphereSystem spheres) {
        LotteryArm out{std::move(relation), std::move(spheres), Verdict::fails, {}};
        out.would_win = eval_counterfactual(p, win, out.spheres);
        out.audit = audit_spheres(out.relation, out.spheres, space, Proposition{"L", lose.extension});
        return out;
    };
    report.sole_entrant = arm("sole-entrant", natural_spheres(space));
    report.likelihood = arm("likelihood", likelihood_spheres(space));

    const auto losing_world = space.find("P:sole-entrant:lose");
    report.losing_world_accessible = report.sole_entrant.spheres.accessible().contains(*losing_world);
    return report;
}

} // namespace ablsem

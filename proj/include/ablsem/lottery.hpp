#pragma once

#include <cstdint>

#include "ablsem/similarity.hpp"

namespace ablsem {

/**
 * Lottery world space.
 *
 * The factual context is a draw among `entrants` tickets (one of them mine) in
 * which I lose; the antecedent context is the draw in which I am the only
 * entrant. Requires entrants >= 2 so that losing is possible in fact.
 */
ClassicalModel lottery_model(std::uint64_t entrants);

struct LotteryArm {
    std::string relation;
    SphereSystem spheres;
    /// "If I were to enter, I would win."
    Verdict would_win = Verdict::fails;
    SimilarityAudit audit;
};

struct LotteryReport {
    std::uint64_t entrants = 0;
    double factual_lose = 0.0;
    double factual_win = 0.0;
    double sole_entrant_lose = 0.0;
    double sole_entrant_win = 0.0;
    /// The sole-entrant losing world lies in some sphere of the sole-entrant relation.
    bool losing_world_accessible = false;
    /// Likelihood check of "I lose" given the sole-entrant antecedent.
    LikelihoodCheck losing_given_sole_entry;
    LotteryArm sole_entrant;
    LotteryArm likelihood;
};

LotteryReport evaluate_lottery(std::uint64_t entrants);

} // namespace ablsem

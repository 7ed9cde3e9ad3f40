#include <gtest/gtest.h>

#include "ablsem/error.hpp"
#include "ablsem/similarity.hpp"
#include "ablsem/worlds.hpp"
#include "support/oracles.hpp"

namespace ablsem {
namespace {

TwoStateVector tsv(const PureState& a, const PureState& b) { return TwoStateVector(a, b); }

TEST(WorldSet, SetAlgebra) {
    const auto a = WorldSet::of({0, 2, 5});
    const auto b = WorldSet::of({2, 3});
    EXPECT_EQ((a & b), WorldSet::of({2}));
    EXPECT_EQ((a | b), WorldSet::of({0, 2, 3, 5}));
    EXPECT_EQ((a - b), WorldSet::of({0, 5}));
    EXPECT_EQ(a.size(), 3U);
    EXPECT_TRUE(WorldSet::of({2}).subset_of(a));
    EXPECT_FALSE(b.subset_of(a));
    EXPECT_EQ(WorldSet::first(3), WorldSet::of({0, 1, 2}));
    EXPECT_EQ(WorldSet::first(64).size(), 64U);
    EXPECT_EQ(a.ids(), (std::vector<WorldId>{0, 2, 5}));
    EXPECT_THROW(WorldSet::of({64}), InputError);
}

TEST(Proposition, CombinatorsFollowSetSemantics) {
    oracle::Lcg rng{11};
    const auto universe = WorldSet::first(10);
    for (int i = 0; i < 200; ++i) {
        const Proposition a{"A", rng.subset(10)};
        const Proposition b{"B", rng.subset(10)};
        for (WorldId w = 0; w < 10; ++w) {
            EXPECT_EQ(conjunction(a, b).extension.contains(w), a.extension.contains(w) && b.extension.contains(w));
            EXPECT_EQ(disjunction(a, b).extension.contains(w), a.extension.contains(w) || b.extension.contains(w));
            EXPECT_EQ(negation(a, universe).extension.contains(w), !a.extension.contains(w));
        }
        EXPECT_TRUE(negation(a, universe).extension.subset_of(universe));
    }
}

TEST(BuildWorldSpace, SpinZXSigmaZ) {
    const auto space = build_world_space(tsv(spin::z_plus(), spin::x_plus()), spin::sigma_z());
    ASSERT_EQ(space.size(), 6U);
    EXPECT_EQ(space.world(space.actual()).name, "i");
    const auto pb = space.find("P:+1:b");
    ASSERT_TRUE(pb);
    EXPECT_NEAR(space.world(*pb).likelihood, 0.5, 1e-12);
    EXPECT_EQ(space.world(*space.find("P:-1:b")).likelihood, 0.0);
    EXPECT_EQ(space.world(*space.find("P:-1:not-b")).likelihood, 0.0);
    EXPECT_EQ(space.antecedent().extension.size(), 4U);
    EXPECT_EQ(space.same_post_outcome().extension, space.abl_governs().extension);
    EXPECT_EQ(space.possible().size(), 4U);
}

TEST(BuildWorldSpace, CertainPostselectionLeavesNotBImpossible) {
    const auto space = build_world_space(tsv(spin::z_plus(), spin::z_plus()), spin::sigma_z());
    EXPECT_EQ(space.world(*space.find("~P:not-b")).likelihood, 0.0);
}

TEST(BuildWorldSpace, InvariantsOnRandomScenarios) {
    for (std::uint64_t s = 0; s < 200; ++s) {
        const std::size_t d = 2 + s % 7;
        const auto space =
            build_world_space(tsv(random_state(d, s), random_state(d, s + 1)), oracle::random_observable(d, s));
        EXPECT_EQ(space.size(), 2 + 2 * d);
        const auto p = space.antecedent().extension;
        EXPECT_NEAR(space.total_likelihood(p), 1.0, 1e-10);
        EXPECT_NEAR(space.total_likelihood(space.all() - p), 1.0, 1e-10);
        for (const auto& w : space.worlds()) {
            EXPECT_EQ(w.measured.has_value(), w.intermediate_outcome.has_value());
            EXPECT_EQ(w.measured.has_value(), p.contains(w.id));
            EXPECT_GE(w.likelihood, 0.0);
            EXPECT_LE(w.likelihood, 1.0);
        }
        EXPECT_EQ(space.abl_governs().extension & p, space.same_post_outcome().extension & p);
    }
}

TEST(BuildWorldSpace, ImpossibleActualWorldRejected) {
    try {
        build_world_space(tsv(spin::z_plus(), spin::z_minus()), spin::sigma_x());
        FAIL() << "expected invalid scenario";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::invalid_scenario);
    }
}

TEST(WorldSpace, ConstructorValidation) {
    const auto w = [](WorldId id, std::optional<std::string> m, double l) {
        World x;
        x.id = id;
        x.name = "w" + std::to_string(id);
        x.measured = m;
        if (m) {
            x.intermediate_outcome = "o";
        }
        x.post_outcome = "b";
        x.likelihood = l;
        return x;
    };
    EXPECT_NO_THROW(WorldSpace({w(0, std::nullopt, 1.0), w(1, "C", 1.0)}, 0));
    EXPECT_THROW(WorldSpace({w(0, std::nullopt, 0.5), w(1, "C", 1.0)}, 0), InputError);
    EXPECT_THROW(WorldSpace({w(1, std::nullopt, 1.0)}, 0), InputError);
    EXPECT_THROW(WorldSpace({w(0, std::nullopt, 1.0), w(1, "C", 1.0)}, 1), InputError);
    EXPECT_THROW(WorldSpace({w(0, std::nullopt, 1.5)}, 0), InputError);
    auto bad = w(0, std::nullopt, 1.0);
    bad.intermediate_outcome = "x";
    EXPECT_THROW(WorldSpace({bad}, 0), InputError);
}

TEST(ValidateSpheres, Examples) {
    EXPECT_TRUE(validate_spheres({0, {WorldSet::of({0}), WorldSet::of({0, 1})}}).empty());
    const auto nesting = validate_spheres({0, {WorldSet::of({0}), WorldSet::of({1})}});
    ASSERT_EQ(nesting.size(), 1U);
    EXPECT_EQ(nesting[0].kind, SphereViolation::Kind::nesting);
    EXPECT_EQ(nesting[0].sphere, 1U);
    const auto centering = validate_spheres({0, {WorldSet::of({1}), WorldSet::of({0, 1})}});
    ASSERT_FALSE(centering.empty());
    EXPECT_EQ(centering[0].kind, SphereViolation::Kind::centering);
    EXPECT_EQ(validate_spheres({0, {}}).at(0).kind, SphereViolation::Kind::no_spheres);
}

TEST(ValidateSpheres, InvalidSystemRejectedByEvaluators) {
    const SphereSystem bad{0, {WorldSet::of({0}), WorldSet::of({1})}};
    const Proposition p{"P", WorldSet::of({1})};
    EXPECT_THROW(cotenable(p, p, bad), InputError);
    EXPECT_THROW(eval_counterfactual(p, p, bad), InputError);
    EXPECT_THROW(eval_via_auxiliary(p, p, bad, {}), InputError);
}

TEST(Cotenable, WholeAccessibleSetIsCotenable) {
    const SphereSystem s{0, {WorldSet::of({0}), WorldSet::of({0, 1, 2})}};
    EXPECT_TRUE(cotenable({"all", s.accessible()}, {"P", WorldSet::of({2})}, s));
    EXPECT_FALSE(cotenable({"all", s.accessible()}, {"none", WorldSet{}}, s));
}

TEST(Cotenable, SpinXXNaturalVersusZ) {
    const auto space = build_world_space(tsv(spin::x_plus(), spin::x_plus()), spin::sigma_z());
    const auto p = space.antecedent();
    const auto t = space.same_post_outcome();
    const auto q = space.abl_governs();
    const auto natural = natural_spheres(space);
    EXPECT_FALSE(cotenable(t, p, natural));
    EXPECT_EQ(eval_counterfactual(p, q, natural), Verdict::fails);
    const auto z = z_spheres(space);
    EXPECT_TRUE(cotenable(t, p, z));
    EXPECT_EQ(eval_counterfactual(p, q, z), Verdict::holds);
}

TEST(Cotenable, AddingXWorldsToPermittingSphereKeepsIt) {
    oracle::Lcg rng{5};
    for (int i = 0; i < 500; ++i) {
        const std::size_t n = 3 + rng.next() % 10;
        const auto s = oracle::random_spheres(n, rng.next() % n, rng);
        const Proposition x{"X", rng.subset(n) | s.spheres[0]};
        const Proposition phi{"phi", rng.subset(n)};
        if (!cotenable(x, phi, s)) {
            continue;
        }
        // add x-worlds to a permitting sphere inside x and to every sphere beyond it
        auto grown = s;
        const auto extra = x.extension & rng.subset(n);
        bool found = false;
        for (auto& sphere : grown.spheres) {
            found = found || (sphere.subset_of(x.extension) && sphere.intersects(phi.extension));
            if (found) {
                sphere = sphere | extra;
            }
        }
        ASSERT_TRUE(validate_spheres(grown).empty());
        EXPECT_TRUE(cotenable(x, phi, grown));
    }
}

TEST(EvalCounterfactual, MatchesSmallestSphereOracle) {
    oracle::Lcg rng{99};
    for (int i = 0; i < 2000; ++i) {
        const std::size_t n = 2 + rng.next() % 14;
        const auto s = oracle::random_spheres(n, rng.next() % n, rng);
        const Proposition p{"P", rng.subset(n)};
        const Proposition q{"Q", rng.subset(n)};
        EXPECT_EQ(eval_counterfactual(p, q, s), oracle::counterfactual_by_smallest_sphere(p, q, s));
    }
}

TEST(EvalCounterfactual, VacuousIffNoAccessibleAntecedentWorld) {
    oracle::Lcg rng{3};
    for (int i = 0; i < 1000; ++i) {
        const std::size_t n = 2 + rng.next() % 10;
        const auto s = oracle::random_spheres(n, 0, rng);
        const Proposition p{"P", rng.subset(n) & rng.subset(n)};
        const Proposition q{"Q", rng.subset(n)};
        EXPECT_EQ(eval_counterfactual(p, q, s) == Verdict::vacuous, !p.extension.intersects(s.accessible()));
    }
}

TEST(EvalCounterfactual, MonotoneInConsequent) {
    oracle::Lcg rng{21};
    for (int i = 0; i < 1000; ++i) {
        const std::size_t n = 2 + rng.next() % 10;
        const auto s = oracle::random_spheres(n, 0, rng);
        const Proposition p{"P", rng.subset(n)};
        const Proposition q{"Q", rng.subset(n)};
        const Proposition wider{"Q+", q.extension | rng.subset(n)};
        if (eval_counterfactual(p, q, s) == Verdict::holds) {
            EXPECT_EQ(eval_counterfactual(p, wider, s), Verdict::holds);
        }
    }
}

TEST(EvalViaAuxiliary, PremiseListOrder) {
    const auto space = build_world_space(tsv(spin::x_plus(), spin::x_plus()), spin::sigma_z());
    const auto p = space.antecedent();
    const auto q = space.abl_governs();
    const std::vector<Proposition> premises{space.same_post_outcome()};
    const auto z = eval_via_auxiliary(p, q, z_spheres(space), premises);
    EXPECT_EQ(z.verdict, Verdict::holds);
    ASSERT_TRUE(z.witness);
    EXPECT_EQ(z.witness->name, "T");
    const auto natural = eval_via_auxiliary(p, q, natural_spheres(space), premises);
    EXPECT_EQ(natural.verdict, Verdict::fails);
    EXPECT_FALSE(natural.witness);
}

TEST(EvalViaAuxiliary, ExhaustiveWitnessIsFirstInOrder) {
    // spheres {0} and {0,1,2}; p = {1,2}; q = {1}
    const SphereSystem s{0, {WorldSet::of({0}), WorldSet::of({0, 1, 2})}};
    const Proposition p{"P", WorldSet::of({1, 2})};
    const Proposition q{"Q", WorldSet::of({1})};
    EXPECT_EQ(eval_counterfactual(p, q, s), Verdict::fails);
    EXPECT_EQ(eval_via_auxiliary(p, q, s, {}, 3).verdict, Verdict::fails);
    const Proposition q2{"Q", WorldSet::of({1, 2})};
    const auto r = eval_via_auxiliary(p, q2, s, {}, 3);
    EXPECT_EQ(r.verdict, Verdict::holds);
    ASSERT_TRUE(r.witness);
    // size-3 set {0,1,2} is the only subset containing a whole p-permitting sphere
    EXPECT_EQ(r.witness->extension, WorldSet::of({0, 1, 2}));
    EXPECT_THROW(eval_via_auxiliary(p, q, s, {}, kMaxExhaustiveWorlds + 1), InputError);
}

TEST(EvalViaAuxiliary, ExhaustiveAgreesWithSphereCondition) {
    oracle::Lcg rng{2024};
    for (int i = 0; i < 300; ++i) {
        const std::size_t n = 2 + rng.next() % 9;
        const auto s = oracle::random_spheres(n, rng.next() % n, rng);
        const Proposition p{"P", rng.subset(n)};
        const Proposition q{"Q", rng.subset(n)};
        const auto aux = eval_via_auxiliary(p, q, s, {}, n);
        EXPECT_EQ(aux.verdict, eval_counterfactual(p, q, s));
        if (aux.verdict == Verdict::holds) {
            ASSERT_TRUE(aux.witness);
            EXPECT_TRUE(cotenable(*aux.witness, p, s));
            EXPECT_TRUE((p.extension & aux.witness->extension).subset_of(q.extension));
        }
    }
}

TEST(Verdict, Names) {
    EXPECT_EQ(to_string(Verdict::holds), "true");
    EXPECT_EQ(to_string(Verdict::fails), "false");
    EXPECT_EQ(to_string(Verdict::vacuous), "vacuously-true");
}

} // namespace
} // namespace ablsem

#include <gtest/gtest.h>

#include <cstdio>
#include <iomanip>
#include <sstream>

#include "ablsem/error.hpp"
#include "ablsem/lottery.hpp"
#include "ablsem/report.hpp"
#include "ablsem/scenario.hpp"

namespace ablsem {
namespace {

const std::string kDir = ABLSEM_SCENARIO_DIR;

const char* kSpin = R"({
  "name": "t",
  "dim": 2,
  "pre_state": [[1, 0], [0, 0]],
  "post_state": [[0.7071067811865476, 0], [0.7071067811865476, 0]],
  "observables": [
    {"name": "sigma_z", "labels": ["+1", "-1"], "eigenbasis": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]}
  ]
})";

ScenarioError parse_error(const std::string& text) {
    try {
        parse_scenario(text);
    } catch (const ScenarioError& e) {
        return e;
    }
    ADD_FAILURE() << "document was accepted:\n" << text;
    return ScenarioError("", 0, "");
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
    const auto at = s.find(from);
    EXPECT_NE(at, std::string::npos) << from;
    return s.replace(at, from.size(), to);
}

TEST(ParseScenario, Minimal) {
    const auto sc = parse_scenario(kSpin);
    EXPECT_EQ(sc.kind, ScenarioKind::quantum);
    EXPECT_EQ(sc.dim, 2U);
    EXPECT_EQ(sc.observables.size(), 1U);
    EXPECT_EQ(sc.ensemble.runs, 100000U);
    EXPECT_EQ(sc.ensemble.seed, kDefaultSeed);
    EXPECT_EQ(sc.two_state().timeline()[1], "t");
    EXPECT_THROW((void)sc.observable("sigma_x"), InputError);
}

TEST(ParseScenario, ShippedPresets) {
    const auto zx = load_scenario(kDir + "/spin_zx.json");
    EXPECT_EQ(zx.dim, 2U);
    EXPECT_GE(zx.observables.size(), 2U);
    EXPECT_EQ(zx.two_state().pre(), spin::z_plus());
    const auto xx = load_scenario(kDir + "/spin_xx.json");
    EXPECT_NEAR(std::abs(inner_product(xx.two_state().pre(), spin::x_plus())), 1.0, 1e-12);
    const auto q = load_scenario(kDir + "/qutrit.json");
    EXPECT_EQ(q.dim, 3U);
    const auto lot = load_scenario(kDir + "/lottery.json");
    EXPECT_EQ(lot.kind, ScenarioKind::classical);
    ASSERT_TRUE(lot.classical);
    EXPECT_THROW((void)lot.two_state(), InputError);
}

TEST(ParseScenario, NormFailureNamesField) {
    const auto e = parse_error(replace(kSpin, R"("pre_state": [[1, 0], [0, 0]])", R"("pre_state": [[1, 0], [1, 0]])"));
    EXPECT_EQ(e.path(), "pre_state");
    EXPECT_EQ(e.line(), 4U);
    EXPECT_NE(std::string(e.what()).find("pre_state"), std::string::npos);
}

TEST(ParseScenario, EqualEigenbasisRowsRejected) {
    const auto e = parse_error(replace(kSpin, R"([[0, 0], [1, 0]]])", R"([[1, 0], [0, 0]]])"));
    EXPECT_EQ(e.path(), "observables[0].eigenbasis");
    EXPECT_EQ(e.line(), 7U);
}

TEST(ParseScenario, SchemaViolations) {
    EXPECT_EQ(parse_error(replace(kSpin, R"("dim": 2)", R"("dim": 2, "extra": 1)")).path(), "extra");
    EXPECT_EQ(parse_error(replace(kSpin, R"("dim": 2)", R"("dim": 3)")).path(), "pre_state");
    EXPECT_EQ(parse_error(replace(kSpin, R"("dim": 2)", R"("dim": 1)")).path(), "dim");
    EXPECT_EQ(parse_error(replace(kSpin, R"([[1, 0], [0, 0]])", R"([[1, 0], [0]])")).path(), "pre_state[1]");
    EXPECT_EQ(parse_error(replace(kSpin, R"("labels": ["+1", "-1"])", R"("labels": ["+1", "+1"])")).path(),
              "observables[0].eigenbasis");
    EXPECT_EQ(parse_error(replace(kSpin, R"("name": "t",)", "")).path(), "");
    EXPECT_EQ(parse_error(replace(kSpin, "\"dim\": 2,", "\"dim\": 2, \"kind\": \"mixed\",")).path(), "kind");
    EXPECT_EQ(parse_error(replace(kSpin, "\"dim\": 2,", "\"dim\": 2, \"ensemble\": {\"runs\": 0},")).path(),
              "ensemble.runs");
}

TEST(ParseScenario, MalformedDocumentReportsLine) {
    const auto e = parse_error(replace(kSpin, R"("dim": 2,)", R"("dim": 2,,)"));
    EXPECT_EQ(e.line(), 3U);
}

TEST(ParseScenario, ClassicalLikelihoodsMustSumToOne) {
    const char* doc = R"({
  "name": "c", "kind": "classical", "actual_outcome": "lose",
  "contexts": [
    {"name": "field", "antecedent": false, "outcomes": [{"label": "lose", "likelihood": 0.9}, {"label": "win", "likelihood": 0.2}]},
    {"name": "solo", "antecedent": true, "outcomes": [{"label": "win", "likelihood": 1}]}
  ]
})";
    const auto e = parse_error(doc);
    EXPECT_EQ(e.path(), "contexts[0].outcomes");
    EXPECT_EQ(e.line(), 4U);
    const auto ok = replace(doc, "0.2", "0.1");
    EXPECT_NO_THROW(parse_scenario(ok));
    EXPECT_EQ(parse_error(replace(ok, R"("actual_outcome": "lose")", R"("actual_outcome": "draw")")).path(),
              "contexts");
}

TEST(LoadScenario, PrefixesFileName) {
    try {
        load_scenario(kDir + "/does-not-exist.json");
        FAIL();
    } catch (const InputError&) {
    }
    const std::string path = ::testing::TempDir() + "bad_scenario.json";
    {
        std::FILE* f = std::fopen(path.c_str(), "w");
        std::fputs(replace(kSpin, R"("pre_state": [[1, 0], [0, 0]])", R"("pre_state": [[2, 0], [0, 0]])").c_str(), f);
        std::fclose(f);
    }
    try {
        load_scenario(path);
        FAIL();
    } catch (const ScenarioError& e) {
        EXPECT_EQ(std::string(e.what()).rfind(path + ":4: pre_state: ", 0), 0U) << e.what();
    }
}

TEST(RenderReport, AblTableHasOneRowPerOutcome) {
    const AblDistribution d{"sigma_z", {{"+1", 1.0}, {"-1", 0.0}}, 0.5};
    const auto text = render_table(d);
    EXPECT_NE(text.find("+1          1.000000"), std::string::npos) << text;
    EXPECT_NE(text.find("-1          0.000000"), std::string::npos) << text;
}

TEST(RenderReport, DeterministicBytes) {
    const auto sc = load_scenario(kDir + "/spin_zx.json");
    const auto a = evaluate_worlds(sc, "sigma_z", Relation::z);
    const auto b = evaluate_worlds(sc, "sigma_z", Relation::z);
    EXPECT_EQ(render_report(a, Format::json), render_report(b, Format::json));
    EXPECT_EQ(render_report(a, Format::table), render_report(b, Format::table));
}

TEST(RenderReport, JsonRoundTrip) {
    const auto sc = load_scenario(kDir + "/qutrit.json");
    for (const auto& obs : sc.observables) {
        const auto d = abl_distribution(sc.two_state(), obs);
        const auto back = abl_distribution_from_json(Json::parse(to_json(d).dump()));
        EXPECT_EQ(back, d);
    }
    const auto sim = evaluate_simulation(sc, &sc.observables[0], 5000, 3, 1, kDefaultSigmaLevel);
    EXPECT_EQ(ensemble_result_from_json(Json::parse(to_json(sim.result).dump())), sim.result);
}

TEST(RenderReport, TableAndJsonAgreeOnNumbers) {
    const auto sc = load_scenario(kDir + "/spin_xx.json");
    const auto report = evaluate_worlds(sc, "sigma_z", Relation::natural);
    const auto j = to_json(report);
    const auto table = render_table(report);
    for (const auto& w : j["worlds"]) {
        std::ostringstream row;
        row << std::fixed << std::setprecision(6) << w["likelihood"].get<double>();
        const auto line_start = table.find("  " + w["name"].get<std::string>() + " ");
        ASSERT_NE(line_start, std::string::npos);
        const auto line = table.substr(line_start, table.find('\n', line_start) - line_start);
        EXPECT_NE(line.find(row.str()), std::string::npos) << line;
    }
}

TEST(EvaluateWorlds, PresetsUnderEveryRelation) {
    for (const char* name : {"spin_zx", "spin_xx", "qutrit"}) {
        const auto sc = load_scenario(kDir + "/" + name + ".json");
        for (const auto& obs : sc.observables) {
            for (auto rel : {Relation::natural, Relation::z, Relation::likelihood}) {
                const auto r = evaluate_worlds(sc, obs.name(), rel);
                EXPECT_TRUE(validate_spheres(r.spheres).empty());
                const auto exhaustive = eval_via_auxiliary(r.space.antecedent(), r.space.abl_governs(), r.spheres,
                                                           {}, r.space.size());
                EXPECT_EQ(exhaustive.verdict, r.counterfactual) << name << " " << obs.name();
                if (r.auxiliary.verdict == Verdict::holds) {
                    EXPECT_EQ(r.counterfactual, Verdict::holds);
                }
                if (rel == Relation::likelihood) {
                    EXPECT_TRUE(r.audit.violations.empty());
                }
            }
        }
    }
}

TEST(EvaluateWorlds, SpinPresetExamples) {
    const auto zx = evaluate_worlds(load_scenario(kDir + "/spin_zx.json"), "sigma_z", Relation::z);
    EXPECT_TRUE(zx.cotenable);
    EXPECT_EQ(zx.counterfactual, Verdict::holds);
    EXPECT_EQ(zx.audit.verdict, AuditVerdict::degenerate_tie);
    bool stacking = false;
    for (const auto& c : zx.caveats) {
        stacking = stacking || c.find("rigged toward") != std::string::npos;
    }
    EXPECT_TRUE(stacking);
    EXPECT_EQ(sphere_diagram(zx.spheres, zx.space), "[[[ i ] P:+1:b ] ~P:not-b P:+1:not-b ]");

    const auto xx = evaluate_worlds(load_scenario(kDir + "/spin_xx.json"), "sigma_z", Relation::natural);
    EXPECT_FALSE(xx.cotenable);
    EXPECT_EQ(xx.counterfactual, Verdict::fails);
    ASSERT_TRUE(xx.disturbance);
    EXPECT_NEAR(*xx.disturbance, 0.5, 1e-12);
}

TEST(EvaluateWorlds, ClassicalLottery) {
    const auto sc = load_scenario(kDir + "/lottery.json");
    const auto r = evaluate_worlds(sc, "", Relation::natural);
    // Q is the actual outcome (losing), which no sole-entrant world realizes.
    EXPECT_EQ(r.counterfactual, Verdict::fails);
    EXPECT_FALSE(r.cotenable);
    EXPECT_FALSE(r.disturbance);
    EXPECT_THROW(evaluate_worlds(sc, "", Relation::z), Error);
}

TEST(Relation, ParseNames) {
    EXPECT_EQ(parse_relation("natural"), Relation::natural);
    EXPECT_EQ(parse_relation("z"), Relation::z);
    EXPECT_EQ(parse_relation("likelihood"), Relation::likelihood);
    EXPECT_FALSE(parse_relation("Z"));
    EXPECT_EQ(to_string(Relation::likelihood), "likelihood");
}

TEST(LotteryReport, JsonFields) {
    const auto j = to_json(evaluate_lottery(10000000));
    EXPECT_EQ(j["losing_world_accessible"], false);
    EXPECT_EQ(j["relations"][0]["would_win"], "true");
    EXPECT_EQ(j["relations"][0]["audit"]["verdict"], "unjustified");
}

} // namespace
} // namespace ablsem

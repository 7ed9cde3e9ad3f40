#include "ablsem/report.hpp"

#include <iomanip>
#include <sstream>

namespace ablsem {

namespace {

std::string fixed6(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(6) << v;
    return os.str();
}

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) {
        s.append(width - s.size(), ' ');
    }
    return s;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string names_of(WorldSet set, const WorldSpace& space) {
    std::string out;
    for (auto id : set.ids()) {
        out += (out.empty() ? "" : ", ") + space.world(id).name;
    }
    return "{" + out + "}";
}

Json optional_string(const std::optional<std::string>& s) { return s ? Json(*s) : Json(nullptr); }

Json sphere_list(const SphereSystem& s, const WorldSpace& space) {
    Json out = Json::array();
    for (auto sphere : s.spheres) {
        Json names = Json::array();
        for (auto id : sphere.ids()) {
            names.push_back(space.world(id).name);
        }
        out.push_back(std::move(names));
    }
    return out;
}

Json pairs_json(const std::vector<LikelihoodPair>& pairs, const WorldSpace& space) {
    Json out = Json::array();
    for (const auto& p : pairs) {
        out.push_back({{"closer", space.world(p.closer).name},
                       {"farther", space.world(p.farther).name},
                       {"closer_likelihood", p.closer_likelihood},
                       {"farther_likelihood", p.farther_likelihood}});
    }
    return out;
}

Json check_json(const LikelihoodCheck& c) {
    return {{"proposition", c.proposition},
            {"prob_given_p", c.prob_x},
            {"prob_not_given_p", c.prob_not_x},
            {"outcome", to_string(c.outcome)}};
}

std::string check_line(const LikelihoodCheck& c) {
    return "Prob(" + c.proposition + "|P&B) = " + fixed6(c.prob_x) + ", Prob(~" + c.proposition +
           "|P&B) = " + fixed6(c.prob_not_x) + " -> " + to_string(c.outcome);
}

std::string audit_table(const SimilarityAudit& a, const WorldSpace& space) {
    std::ostringstream os;
    os << "audit (" << a.relation << "): " << to_string(a.verdict) << "\n";
    for (const auto& c : a.likelihood_checks) {
        os << "  " << check_line(c) << "\n";
    }
    os << "  stacks " << (a.likelihood_checks.empty() ? "X" : a.likelihood_checks.front().proposition) << ": "
       << yes_no(a.stacks_x) << "\n";
    os << "  likelihood violations: " << a.violations.size() << "\n";
    for (const auto& p : a.violations) {
        os << "    " << space.world(p.closer).name << " (" << fixed6(p.closer_likelihood)
           << ") is closer than " << space.world(p.farther).name << " (" << fixed6(p.farther_likelihood)
           << ")\n";
    }
    os << "  tied pairs in different spheres: " << a.ties.size() << "\n";
    for (const auto& p : a.ties) {
        os << "    " << space.world(p.closer).name << " ~ " << space.world(p.farther).name << " ("
           << fixed6(p.closer_likelihood) << ")\n";
    }
    return os.str();
}

void check_keys(const Json& j, std::initializer_list<const char*> keys) {
    for (const char* key : keys) {
        if (!j.contains(key)) {
            throw InputError(std::string("report is missing field '") + key + "'");
        }
    }
}

std::vector<std::string> worlds_caveats(const WorldsReport& r) {
    std::vector<std::string> out;
    const auto& audit = r.audit;
    const std::string x = audit.likelihood_checks.empty() ? "T" : audit.likelihood_checks.front().proposition;
    if (audit.stacks_x && audit.verdict != AuditVerdict::justified) {
        out.push_back("the relation is rigged toward " + x + ": it puts the P&" + x +
                      " worlds closest by stipulation, yet " + x + " is not more likely than ~" + x +
                      " given P, so the counterfactual is true by choice of relation, not by likelihood");
    }
    if (audit.verdict == AuditVerdict::unjustified) {
        out.push_back("~" + x + " is more likely than " + x +
                      " given P; by comparative likelihood the P&~" + x +
                      " worlds belong in a sphere no larger than the P&" + x + " worlds");
    } else if (audit.verdict == AuditVerdict::degenerate_tie) {
        out.push_back(x + " and ~" + x + " are equally likely given P; P-worlds differing only in " + x +
                      " are equally close");
    }
    if (!r.cotenable && r.counterfactual == Verdict::fails) {
        std::string why = "T is not cotenable with P: the smallest P-permitting sphere holds a P&~T world";
        if (r.disturbance) {
            why += " (measuring at the intermediate time shifts the post-selection probability by " +
                   fixed6(*r.disturbance) + ")";
        }
        out.push_back(why + "; ABL probabilities for this observable do not transfer to the unmeasured "
                            "actual world");
    }
    if (!audit.violations.empty()) {
        out.push_back("some worlds are placed closer than strictly more likely worlds");
    }
    return out;
}

} // namespace

std::optional<Relation> parse_relation(std::string_view name) {
    if (name == "natural") {
        return Relation::natural;
    }
    if (name == "z") {
        return Relation::z;
    }
    if (name == "likelihood") {
        return Relation::likelihood;
    }
    return std::nullopt;
}

std::string to_string(Relation r) {
    switch (r) {
    case Relation::natural:
        return "natural";
    case Relation::z:
        return "z";
    case Relation::likelihood:
        return "likelihood";
    }
    return "unknown";
}

SphereSystem build_spheres(Relation r, const WorldSpace& space) {
    switch (r) {
    case Relation::natural:
        return natural_spheres(space);
    case Relation::z:
        return z_spheres(space);
    case Relation::likelihood:
        return likelihood_spheres(space);
    }
    throw InputError("unknown similarity relation");
}

SimulateReport evaluate_simulation(const Scenario& sc, const Observable* intermediate, std::uint64_t runs,
                                   std::uint64_t seed, unsigned workers, double sigma_level) {
    const auto& tsv = sc.two_state();
    SimulateReport report{sc.name, simulate_ensemble(tsv, intermediate, runs, seed, workers), {}, std::nullopt,
                          false};
    const double expected = intermediate ? postselection_prob(tsv, *intermediate) : postselection_prob(tsv);
    report.rate = compare_rate(report.result, expected, sigma_level);
    report.pass = report.rate.pass;
    if (intermediate) {
        report.abl = compare_with_abl(report.result, abl_distribution(tsv, *intermediate), sigma_level);
        report.pass = report.pass && report.abl->pass;
    }
    return report;
}

WorldsReport evaluate_worlds(const Scenario& sc, const std::string& observable, Relation relation) {
    std::optional<WorldSpace> space;
    std::optional<double> dist;
    std::string antecedent;
    if (sc.kind == ScenarioKind::classical) {
        space.emplace(build_classical_world_space(*sc.classical));
        for (const auto& ctx : sc.classical->contexts) {
            if (ctx.antecedent) {
                antecedent = ctx.name;
            }
        }
    } else {
        const auto& obs = sc.observable(observable);
        space.emplace(build_world_space(sc.two_state(), obs));
        dist = disturbance(sc.two_state(), obs);
        antecedent = obs.name();
    }
    auto spheres = build_spheres(relation, *space);
    const auto p = space->antecedent();
    const auto t = space->same_post_outcome();
    const auto q = space->abl_governs();
    const std::vector<Proposition> premises{t};

    WorldsReport report{sc.name,
                        antecedent,
                        relation,
                        *space,
                        spheres,
                        cotenable(t, p, spheres),
                        eval_counterfactual(p, q, spheres),
                        eval_via_auxiliary(p, q, spheres, premises),
                        audit_spheres(to_string(relation), spheres, *space),
                        dist,
                        {}};
    report.caveats = worlds_caveats(report);
    return report;
}

Json to_json(const AblDistribution& d) {
    Json entries = Json::array();
    for (const auto& e : d.entries) {
        entries.push_back({{"label", e.label}, {"probability", e.probability}});
    }
    return {{"observable", d.observable}, {"denominator", d.denominator}, {"entries", std::move(entries)}};
}

Json to_json(const AblReport& r) {
    return {{"command", "abl"}, {"scenario", r.scenario}, {"distribution", to_json(r.distribution)}};
}

Json to_json(const EnsembleResult& r) {
    Json outcomes = Json::array();
    for (const auto& o : r.outcomes) {
        outcomes.push_back({{"label", o.label}, {"count", o.count}, {"conditional_frequency", o.conditional_frequency}});
    }
    return {{"total_runs", r.total_runs},
            {"postselected_runs", r.postselected_runs},
            {"postselection_rate", r.postselection_rate},
            {"intermediate", optional_string(r.intermediate)},
            {"outcomes", std::move(outcomes)},
            {"master_seed", r.master_seed}};
}

Json to_json(const AblComparison& c) {
    Json rows = Json::array();
    for (const auto& o : c.outcomes) {
        rows.push_back({{"label", o.label},
                        {"frequency", o.frequency},
                        {"abl", o.abl},
                        {"deviation", o.deviation},
                        {"std_error", o.std_error},
                        {"pass", o.pass}});
    }
    return {{"observable", c.observable},
            {"postselected_runs", c.postselected_runs},
            {"sigma_level", c.sigma_level},
            {"outcomes", std::move(rows)},
            {"pass", c.pass}};
}

Json to_json(const RateComparison& c) {
    return {{"expected", c.expected},
            {"observed", c.observed},
            {"deviation", c.deviation},
            {"std_error", c.std_error},
            {"pass", c.pass}};
}

Json to_json(const SimulateReport& r) {
    return {{"command", "simulate"},
            {"scenario", r.scenario},
            {"result", to_json(r.result)},
            {"postselection_check", to_json(r.rate)},
            {"abl_check", r.abl ? to_json(*r.abl) : Json(nullptr)},
            {"pass", r.pass}};
}

Json to_json(const RealityCommandReport& r) {
    Json entries = Json::array();
    for (const auto& e : r.reality.entries) {
        entries.push_back({{"observable", e.observable},
                           {"label", e.label},
                           {"probability", e.probability},
                           {"validity", to_string(e.validity.status)},
                           {"cotenable", e.validity.cotenable},
                           {"counterfactual", to_string(e.validity.counterfactual)},
                           {"disturbance", e.validity.disturbance},
                           {"applies_when_measured", true}});
    }
    Json undefined = Json::array();
    for (const auto& u : r.reality.undefined) {
        undefined.push_back({{"observable", u.observable}, {"denominator", u.denominator}});
    }
    return {{"command", "reality"},
            {"scenario", r.scenario},
            {"kind", to_string(r.kind)},
            {"tolerance", r.reality.tolerance},
            {"entries", std::move(entries)},
            {"undefined", std::move(undefined)}};
}

Json to_json(const SimilarityAudit& a, const WorldSpace& space) {
    Json checks = Json::array();
    for (const auto& c : a.likelihood_checks) {
        checks.push_back(check_json(c));
    }
    return {{"relation", a.relation},
            {"verdict", to_string(a.verdict)},
            {"likelihood_checks", std::move(checks)},
            {"stacks_x", a.stacks_x},
            {"violations", pairs_json(a.violations, space)},
            {"ties", pairs_json(a.ties, space)}};
}

Json to_json(const WorldsReport& r) {
    const auto p = r.space.antecedent().extension;
    const auto t = r.space.same_post_outcome().extension;
    Json worlds = Json::array();
    for (const auto& w : r.space.worlds()) {
        const auto rank = r.spheres.rank_of(w.id);
        worlds.push_back({{"id", w.id},
                          {"name", w.name},
                          {"measured", optional_string(w.measured)},
                          {"intermediate_outcome", optional_string(w.intermediate_outcome)},
                          {"post_outcome", w.post_outcome},
                          {"likelihood", w.likelihood},
                          {"sphere", rank ? Json(*rank + 1) : Json(nullptr)},
                          {"P", p.contains(w.id)},
                          {"T", t.contains(w.id)}});
    }
    Json caveats = Json::array();
    for (const auto& c : r.caveats) {
        caveats.push_back(c);
    }
    return {{"command", "worlds"},
            {"scenario", r.scenario},
            {"antecedent", r.antecedent},
            {"relation", to_string(r.relation)},
            {"actual_world", r.space.world(r.space.actual()).name},
            {"worlds", std::move(worlds)},
            {"spheres", sphere_list(r.spheres, r.space)},
            {"cotenable_T_P", r.cotenable},
            {"counterfactual_P_Q", to_string(r.counterfactual)},
            {"auxiliary",
             {{"verdict", to_string(r.auxiliary.verdict)},
              {"witness", r.auxiliary.witness ? Json(r.auxiliary.witness->name) : Json(nullptr)}}},
            {"audit", to_json(r.audit, r.space)},
            {"disturbance", r.disturbance ? Json(*r.disturbance) : Json(nullptr)},
            {"caveats", std::move(caveats)}};
}

Json to_json(const LotteryReport& r) {
    const auto space = build_classical_world_space(lottery_model(r.entrants));
    auto arm = [&](const LotteryArm& a) {
        return Json{{"relation", a.relation},
                    {"spheres", sphere_list(a.spheres, space)},
                    {"would_win", to_string(a.would_win)},
                    {"audit", to_json(a.audit, space)}};
    };
    return {{"command", "lottery"},
            {"entrants", r.entrants},
            {"factual", {{"lose", r.factual_lose}, {"win", r.factual_win}}},
            {"sole_entrant", {{"lose", r.sole_entrant_lose}, {"win", r.sole_entrant_win}}},
            {"losing_world_accessible", r.losing_world_accessible},
            {"losing_given_sole_entry", check_json(r.losing_given_sole_entry)},
            {"relations", Json::array({arm(r.sole_entrant), arm(r.likelihood)})}};
}

AblDistribution abl_distribution_from_json(const Json& j) {
    check_keys(j, {"observable", "denominator", "entries"});
    AblDistribution d;
    d.observable = j.at("observable").get<std::string>();
    d.denominator = j.at("denominator").get<double>();
    for (const auto& e : j.at("entries")) {
        d.entries.push_back({e.at("label").get<std::string>(), e.at("probability").get<double>()});
    }
    return d;
}

EnsembleResult ensemble_result_from_json(const Json& j) {
    check_keys(j, {"total_runs", "postselected_runs", "postselection_rate", "intermediate", "outcomes", "master_seed"});
    EnsembleResult r;
    r.total_runs = j.at("total_runs").get<std::uint64_t>();
    r.postselected_runs = j.at("postselected_runs").get<std::uint64_t>();
    r.postselection_rate = j.at("postselection_rate").get<double>();
    if (!j.at("intermediate").is_null()) {
        r.intermediate = j.at("intermediate").get<std::string>();
    }
    for (const auto& o : j.at("outcomes")) {
        r.outcomes.push_back({o.at("label").get<std::string>(), o.at("count").get<std::uint64_t>(),
                              o.at("conditional_frequency").get<double>()});
    }
    r.master_seed = j.at("master_seed").get<std::uint64_t>();
    return r;
}

std::string render_table(const AblDistribution& d) {
    std::ostringstream os;
    os << "ABL distribution for " << d.observable << " (denominator " << fixed6(d.denominator) << ")\n";
    os << "  " << pad("outcome", 12) << "probability\n";
    for (const auto& e : d.entries) {
        os << "  " << pad(e.label, 12) << fixed6(e.probability) << "\n";
    }
    return os.str();
}

std::string render_table(const AblReport& r) {
    return "scenario: " + r.scenario + "\n" + render_table(r.distribution);
}

std::string render_table(const SimulateReport& r) {
    std::ostringstream os;
    const auto& res = r.result;
    os << "scenario: " << r.scenario << "\n";
    os << "intermediate measurement: " << res.intermediate.value_or("none") << "\n";
    os << "runs: " << res.total_runs << "  post-selected: " << res.postselected_runs
       << "  seed: " << res.master_seed << "\n";
    os << "post-selection rate: " << fixed6(r.rate.observed) << " (expected " << fixed6(r.rate.expected)
       << ", std error " << fixed6(r.rate.std_error) << ") " << (r.rate.pass ? "PASS" : "FAIL") << "\n";
    if (r.abl) {
        os << "conditional frequencies vs ABL (" << r.abl->sigma_level << " sigma):\n";
        os << "  " << pad("outcome", 10) << pad("count", 10) << pad("frequency", 12) << pad("abl", 12)
           << pad("std error", 12) << "result\n";
        for (std::size_t k = 0; k < r.abl->outcomes.size(); ++k) {
            const auto& row = r.abl->outcomes[k];
            os << "  " << pad(row.label, 10) << pad(std::to_string(res.outcomes[k].count), 10)
               << pad(fixed6(row.frequency), 12) << pad(fixed6(row.abl), 12) << pad(fixed6(row.std_error), 12)
               << (row.pass ? "PASS" : "FAIL") << "\n";
        }
    }
    os << "overall: " << (r.pass ? "PASS" : "FAIL") << "\n";
    return os.str();
}

std::string render_table(const RealityCommandReport& r) {
    std::ostringstream os;
    os << "scenario: " << r.scenario << "\n";
    if (r.kind == ScenarioKind::classical) {
        os << "classical scenario: no quantum observables, no elements of reality\n";
        return os.str();
    }
    os << "outcomes with ABL probability >= 1 - " << r.reality.tolerance << ":\n";
    if (r.reality.entries.empty()) {
        os << "  (none)\n";
    }
    for (const auto& e : r.reality.entries) {
        os << "  " << pad(e.observable, 12) << pad(e.label, 8) << fixed6(e.probability) << "  "
           << to_string(e.validity.status) << "\n";
        os << "    holds for the measurement actually performed between the selections;";
        switch (e.validity.status) {
        case CounterfactualStatus::valid:
            os << " the counterfactual also holds (T cotenable with P)\n";
            break;
        case CounterfactualStatus::invalid:
            os << " not a property of the unmeasured system: T is not cotenable with P (P-worlds with "
                  "another post-selection outcome are possible; disturbance "
               << fixed6(e.validity.disturbance) << ")\n";
            break;
        case CounterfactualStatus::no_actual_world:
            os << " no actual world: the factual post-selection is impossible\n";
            break;
        }
    }
    for (const auto& u : r.reality.undefined) {
        os << "  " << pad(u.observable, 12) << "undefined (denominator " << fixed6(u.denominator) << ")\n";
    }
    return os.str();
}

std::string sphere_diagram(const SphereSystem& s, const WorldSpace& space) {
    std::string out;
    WorldSet inner;
    for (auto sphere : s.spheres) {
        std::string layer = "[" + out;
        for (auto id : (sphere - inner).ids()) {
            layer += " " + space.world(id).name;
        }
        out = layer + " ]";
        inner = sphere;
    }
    return out;
}

std::string render_table(const WorldsReport& r) {
    std::ostringstream os;
    os << "scenario: " << r.scenario << "  antecedent: " << r.antecedent
       << "  relation: " << to_string(r.relation) << "\n";
    const auto p = r.space.antecedent().extension;
    const auto t = r.space.same_post_outcome().extension;
    os << "  " << pad("world", 22) << pad("P", 3) << pad("T", 3) << pad("likelihood", 12) << "sphere\n";
    for (const auto& w : r.space.worlds()) {
        const auto rank = r.spheres.rank_of(w.id);
        os << "  " << pad(w.name, 22) << pad(p.contains(w.id) ? "1" : "0", 3) << pad(t.contains(w.id) ? "1" : "0", 3)
           << pad(fixed6(w.likelihood), 12) << (rank ? std::to_string(*rank + 1) : "-") << "\n";
    }
    os << "spheres:\n";
    WorldSet inner;
    for (std::size_t k = 0; k < r.spheres.spheres.size(); ++k) {
        const auto sphere = r.spheres.spheres[k];
        os << "  " << (k + 1) << ": " << names_of(sphere, r.space);
        if (k > 0) {
            os << "  (adds " << names_of(sphere - inner, r.space) << ")";
        }
        os << "\n";
        inner = sphere;
    }
    os << "  nesting: " << sphere_diagram(r.spheres, r.space) << "\n";
    if (r.disturbance) {
        os << "disturbance: " << fixed6(*r.disturbance) << "\n";
    }
    os << "cotenable(T, P): " << (r.cotenable ? "true" : "false") << "\n";
    os << "P []-> Q: " << to_string(r.counterfactual) << "\n";
    os << "via auxiliary premise: " << to_string(r.auxiliary.verdict);
    if (r.auxiliary.witness) {
        os << " (witness " << r.auxiliary.witness->name << ")";
    }
    os << "\n";
    os << audit_table(r.audit, r.space);
    for (const auto& c : r.caveats) {
        os << "caveat: " << c << "\n";
    }
    return os.str();
}

std::string render_table(const LotteryReport& r) {
    const auto space = build_classical_world_space(lottery_model(r.entrants));
    std::ostringstream os;
    os << "lottery with " << r.entrants << " entrants\n";
    os << "factual arm:      lose " << fixed6(r.factual_lose) << "  win " << fixed6(r.factual_win) << " (1 in "
       << r.entrants << ")\n";
    os << "sole-entrant arm: lose " << fixed6(r.sole_entrant_lose) << "  win " << fixed6(r.sole_entrant_win)
       << "  (losing world " << (r.losing_world_accessible ? "accessible" : "inaccessible") << ")\n";
    os << check_line(r.losing_given_sole_entry) << "\n";
    for (const auto* arm : {&r.sole_entrant, &r.likelihood}) {
        os << "relation " << arm->relation << ": " << sphere_diagram(arm->spheres, space) << "\n";
        os << "  if I were to enter, I would win: " << to_string(arm->would_win) << "\n";
        os << "  audit: " << to_string(arm->audit.verdict) << ", violations " << arm->audit.violations.size()
           << "\n";
    }
    if (r.losing_given_sole_entry.outcome == CheckOutcome::fail) {
        os << "caveat: the sole-entrant arm makes the actual outcome (losing) impossible; the counterfactual is "
              "true there but carries no information about the actual draw\n";
    }
    return os.str();
}

} // namespace ablsem

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ablsem/lottery.hpp"
#include "ablsem/reality.hpp"
#include "ablsem/scenario.hpp"
#include "ablsem/similarity.hpp"

namespace ablsem {

using Json = nlohmann::ordered_json;

enum class Format { table, json };

enum class Relation { natural, z, likelihood };

std::optional<Relation> parse_relation(std::string_view name);
std::string to_string(Relation r);
SphereSystem build_spheres(Relation r, const WorldSpace& space);

struct AblReport {
    std::string scenario;
    AblDistribution distribution;
};

struct SimulateReport {
    std::string scenario;
    EnsembleResult result;
    /// Observed post-selection rate against postselection_prob.
    RateComparison rate;
    std::optional<AblComparison> abl;
    bool pass = false;
};

struct RealityCommandReport {
    std::string scenario;
    ScenarioKind kind = ScenarioKind::quantum;
    RealityReport reality;
};

struct WorldsReport {
    std::string scenario;
    /// Intermediate observable, or the antecedent context of a classical scenario.
    std::string antecedent;
    Relation relation = Relation::natural;
    WorldSpace space;
    SphereSystem spheres;
    bool cotenable = false;
    Verdict counterfactual = Verdict::fails;
    AuxiliaryResult auxiliary;
    SimilarityAudit audit;
    std::optional<double> disturbance;
    std::vector<std::string> caveats;
};

SimulateReport evaluate_simulation(const Scenario& sc, const Observable* intermediate, std::uint64_t runs,
                                   std::uint64_t seed, unsigned workers = 0,
                                   double sigma_level = kDefaultSigmaLevel);

/// `observable` is required for quantum scenarios and ignored for classical ones.
WorldsReport evaluate_worlds(const Scenario& sc, const std::string& observable, Relation relation);

Json to_json(const AblDistribution& d);
Json to_json(const AblReport& r);
Json to_json(const EnsembleResult& r);
Json to_json(const AblComparison& c);
Json to_json(const RateComparison& c);
Json to_json(const SimulateReport& r);
Json to_json(const RealityCommandReport& r);
Json to_json(const SimilarityAudit& a, const WorldSpace& space);
Json to_json(const WorldsReport& r);
Json to_json(const LotteryReport& r);

AblDistribution abl_distribution_from_json(const Json& j);
EnsembleResult ensemble_result_from_json(const Json& j);

std::string render_table(const AblDistribution& d);
std::string render_table(const AblReport& r);
std::string render_table(const SimulateReport& r);
std::string render_table(const RealityCommandReport& r);
std::string render_table(const WorldsReport& r);
std::string render_table(const LotteryReport& r);

/// Nested-bracket picture of a sphere system, e.g. "[[ i ] P:+1:b ] ...".
std::string sphere_diagram(const SphereSystem& s, const WorldSpace& space);

/// Byte-stable rendering: tables print probabilities to 6 decimals, JSON at full precision.
template <typename Report>
std::string render_report(const Report& report, Format format) {
    if (format == Format::json) {
        return to_json(report).dump(2) + "\n";
    }
    return render_table(report);
}

} // namespace ablsem

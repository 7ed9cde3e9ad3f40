#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ablsem/abl.hpp"
#include "ablsem/ensemble.hpp"
#include "ablsem/worlds.hpp"

namespace ablsem {

enum class ScenarioKind { quantum, classical };

struct EnsembleSettings {
    std::uint64_t runs = 100000;
    std::uint64_t seed = kDefaultSeed;
};

/// A validated scenario document. Quantum scenarios carry states and
/// observables; classical ones carry a likelihood table.
struct Scenario {
    std::string name;
    ScenarioKind kind = ScenarioKind::quantum;
    std::size_t dim = 0;
    std::optional<TwoStateVector> states;
    std::vector<Observable> observables;
    EnsembleSettings ensemble;
    std::optional<ClassicalModel> classical;
    std::string note;

    [[nodiscard]] const Observable& observable(std::string_view name) const;
    [[nodiscard]] const TwoStateVector& two_state() const;
};

/// Rejected scenario document. `path` names the offending field (e.g.
/// "observables[0].eigenbasis"); `line` is 1-based, or 0 if unknown.
class ScenarioError : public InputError {
  public:
    ScenarioError(std::string path, std::size_t line, std::string detail, std::string file = {});

    [[nodiscard]] const std::string& path() const noexcept { return path_; }
    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] const std::string& detail() const noexcept { return detail_; }

  private:
    std::string path_;
    std::size_t line_;
    std::string detail_;
};

Scenario parse_scenario(std::string_view source);
Scenario load_scenario(const std::filesystem::path& file);

std::string to_string(ScenarioKind k);

} // namespace ablsem

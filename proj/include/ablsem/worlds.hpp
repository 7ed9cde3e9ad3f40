#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ablsem/abl.hpp"

namespace ablsem {

using WorldId = std::size_t;

/// World spaces are small and scenario generated; sets are 64-bit masks.
inline constexpr std::size_t kMaxWorlds = 64;

/// Largest space for which an exhaustive auxiliary-premise search is allowed.
inline constexpr std::size_t kMaxExhaustiveWorlds = 20;

class WorldSet {
  public:
    constexpr WorldSet() = default;
    constexpr explicit WorldSet(std::uint64_t bits) : bits_(bits) {}

    static WorldSet of(std::initializer_list<WorldId> ids);
    /// {0, ..., n-1}
    static WorldSet first(std::size_t n);

    void insert(WorldId id);
    [[nodiscard]] bool contains(WorldId id) const noexcept { return id < kMaxWorlds && ((bits_ >> id) & 1U); }
    [[nodiscard]] bool empty() const noexcept { return bits_ == 0; }
    [[nodiscard]] std::size_t size() const noexcept { return static_cast<std::size_t>(std::popcount(bits_)); }
    [[nodiscard]] bool subset_of(WorldSet other) const noexcept { return (bits_ & ~other.bits_) == 0; }
    [[nodiscard]] bool intersects(WorldSet other) const noexcept { return (bits_ & other.bits_) != 0; }
    [[nodiscard]] std::uint64_t bits() const noexcept { return bits_; }
    /// Members in increasing id order.
    [[nodiscard]] std::vector<WorldId> ids() const;

    friend constexpr WorldSet operator&(WorldSet a, WorldSet b) { return WorldSet(a.bits_ & b.bits_); }
    friend constexpr WorldSet operator|(WorldSet a, WorldSet b) { return WorldSet(a.bits_ | b.bits_); }
    friend constexpr WorldSet operator-(WorldSet a, WorldSet b) { return WorldSet(a.bits_ & ~b.bits_); }
    friend constexpr bool operator==(WorldSet, WorldSet) = default;

  private:
    std::uint64_t bits_ = 0;
};

/**
 * A possible world: a measurement context and the outcomes recorded in it.
 *
 * `measured` names the antecedent context (the intermediate observable, or
 * the counterfactual arm of a classical scenario); the antecedent P holds
 * iff it is present. `likelihood` is the probability of the outcome record
 * given the world's context.
 */
struct World {
    WorldId id = 0;
    std::string name;
    std::optional<std::string> measured;
    std::optional<std::string> intermediate_outcome;
    std::string post_outcome;
    double likelihood = 0.0;
};

struct Proposition {
    std::string name;
    WorldSet extension;
};

Proposition conjunction(const Proposition& a, const Proposition& b);
Proposition disjunction(const Proposition& a, const Proposition& b);
/// Complement relative to `universe`.
Proposition negation(const Proposition& a, WorldSet universe);

/// Context/outcome likelihood table for scenarios with no quantum state (e.g. a lottery).
struct ClassicalModel {
    struct Outcome {
        std::string label;
        double likelihood = 0.0;
    };
    struct Context {
        std::string name;
        bool antecedent = false;
        std::vector<Outcome> outcomes;
    };
    std::vector<Context> contexts;
    /// Outcome of the actual world; it lives in the single non-antecedent context.
    std::string actual_outcome;
};

/**
 * Finite set of worlds with a designated actual world.
 *
 * Invariants checked on construction: ids equal positions, likelihoods lie in
 * [0, 1] and sum to 1 within every context, the intermediate outcome is
 * present exactly in antecedent worlds, and the actual world is a
 * non-antecedent world of nonzero likelihood.
 */
class WorldSpace {
  public:
    WorldSpace(std::vector<World> worlds, WorldId actual);

    [[nodiscard]] std::span<const World> worlds() const noexcept { return worlds_; }
    [[nodiscard]] const World& world(WorldId id) const { return worlds_.at(id); }
    [[nodiscard]] std::size_t size() const noexcept { return worlds_.size(); }
    [[nodiscard]] WorldId actual() const noexcept { return actual_; }

    [[nodiscard]] WorldSet all() const noexcept { return WorldSet::first(worlds_.size()); }
    /// Worlds with nonzero likelihood. Only these may appear in a sphere.
    [[nodiscard]] WorldSet possible() const;

    /// P: the antecedent context holds.
    [[nodiscard]] Proposition antecedent() const;
    /// T: the world shares the actual world's post-selection outcome (for a quantum
    /// space, the system has the same two-state vector as in the actual world).
    [[nodiscard]] Proposition same_post_outcome() const;
    /// Q: the ABL distribution computed from the actual two-state vector governs the
    /// world. Its extension coincides with T.
    [[nodiscard]] Proposition abl_governs() const;
    /// Worlds whose post outcome is `label`.
    [[nodiscard]] Proposition post_outcome_is(const std::string& label) const;

    /// Sum of likelihoods over `set`.
    [[nodiscard]] double total_likelihood(WorldSet set) const;

    [[nodiscard]] std::optional<WorldId> find(std::string_view name) const;

  private:
    std::vector<World> worlds_;
    WorldId actual_;
};

/**
 * Worlds generated by a pre/post-selection scenario and one candidate observable.
 *
 * Order: the actual world i (not P, post b), then (not P, not-b), then for each
 * outcome k of `obs` the pair (P, k, b), (P, k, not-b).
 */
WorldSpace build_world_space(const TwoStateVector& tsv, const Observable& obs);

WorldSpace build_classical_world_space(const ClassicalModel& model);

/// Nested spheres around a center. Sphere k is `spheres[k]`, smallest first.
struct SphereSystem {
    WorldId center = 0;
    std::vector<WorldSet> spheres;

    /// Union of all spheres.
    [[nodiscard]] WorldSet accessible() const;
    /// Index of the smallest sphere containing `id`.
    [[nodiscard]] std::optional<std::size_t> rank_of(WorldId id) const;
};

struct SphereViolation {
    enum class Kind { no_spheres, centering, nesting };
    Kind kind = Kind::nesting;
    /// Offending sphere (for nesting, the larger of the pair).
    std::size_t sphere = 0;
    std::string message;
};

std::vector<SphereViolation> validate_spheres(const SphereSystem& s);

/// x holds throughout some phi-permitting sphere.
bool cotenable(const Proposition& x, const Proposition& phi, const SphereSystem& s);

enum class Verdict { holds, fails, vacuous };

/// p []-> q by the sphere truth condition.
Verdict eval_counterfactual(const Proposition& p, const Proposition& q, const SphereSystem& s);

struct AuxiliaryResult {
    Verdict verdict = Verdict::fails;
    std::optional<Proposition> witness;
};

/**
 * p []-> q by the auxiliary-premise condition: some X, cotenable with p,
 * with p & X entailing q.
 *
 * Premises are tried in list order. If `exhaustive_universe` is set, every
 * subset of {0, ..., n-1} is then tried by size, and lexicographically by
 * sorted ids within a size.
 */
AuxiliaryResult eval_via_auxiliary(const Proposition& p, const Proposition& q, const SphereSystem& s,
                                   std::span<const Proposition> premises,
                                   std::optional<std::size_t> exhaustive_universe = std::nullopt);

std::string to_string(Verdict v);

} // namespace ablsem

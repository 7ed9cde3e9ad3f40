#include "ablsem/worlds.hpp"

#include <cmath>
#include <map>

namespace ablsem {

namespace {

void require_valid(const SphereSystem& s) {
    const auto violations = validate_spheres(s);
    if (!violations.empty()) {
        throw InputError("invalid sphere system: " + violations.front().message);
    }
}

std::string describe_ids(const std::vector<WorldId>& ids) {
    std::string out = "{";
    for (std::size_t k = 0; k < ids.size(); ++k) {
        out += (k ? "," : "") + std::to_string(ids[k]);
    }
    return out + "}";
}

// Calls visit(mask) for every r-subset of {0..n-1} in lexicographic order of
// sorted ids. Stops early when visit returns true.
template <typename Visit>
bool for_each_combination(std::size_t n, std::size_t r, Visit&& visit) {
    std::vector<std::size_t> idx(r);
    for (std::size_t k = 0; k < r; ++k) {
        idx[k] = k;
    }
    for (;;) {
        std::uint64_t mask = 0;
        for (auto i : idx) {
            mask |= std::uint64_t{1} << i;
        }
        if (visit(WorldSet(mask))) {
            return true;
        }
        // Advance to the next combination.
        std::size_t k = r;
        while (k > 0 && idx[k - 1] == n - r + (k - 1)) {
            --k;
        }
        if (k == 0) {
            return false;
        }
        ++idx[k - 1];
        for (std::size_t m = k; m < r; ++m) {
            idx[m] = idx[m - 1] + 1;
        }
    }
}

} // namespace

WorldSet WorldSet::of(std::initializer_list<WorldId> ids) {
    WorldSet s;
    for (auto id : ids) {
        s.insert(id);
    }
    return s;
}

WorldSet WorldSet::first(std::size_t n) {
    if (n > kMaxWorlds) {
        throw InputError("world sets hold at most " + std::to_string(kMaxWorlds) + " worlds");
    }
    return WorldSet(n == kMaxWorlds ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
}

void WorldSet::insert(WorldId id) {
    if (id >= kMaxWorlds) {
        throw InputError("world id " + std::to_string(id) + " exceeds the world-set capacity");
    }
    bits_ |= std::uint64_t{1} << id;
}

std::vector<WorldId> WorldSet::ids() const {
    std::vector<WorldId> out;
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
        out.push_back(static_cast<WorldId>(std::countr_zero(b)));
    }
    return out;
}

Proposition conjunction(const Proposition& a, const Proposition& b) {
    return {"(" + a.name + " & " + b.name + ")", a.extension & b.extension};
}

Proposition disjunction(const Proposition& a, const Proposition& b) {
    return {"(" + a.name + " | " + b.name + ")", a.extension | b.extension};
}

Proposition negation(const Proposition& a, WorldSet universe) {
    return {"~" + a.name, universe - a.extension};
}

WorldSpace::WorldSpace(std::vector<World> worlds, WorldId actual)
    : worlds_(std::move(worlds)), actual_(actual) {
    if (worlds_.empty() || worlds_.size() > kMaxWorlds) {
        throw InputError("a world space needs between 1 and " + std::to_string(kMaxWorlds) +
                         " worlds, got " + std::to_string(worlds_.size()));
    }
    std::map<std::string, double> context_totals;
    for (std::size_t k = 0; k < worlds_.size(); ++k) {
        const auto& w = worlds_[k];
        if (w.id != k) {
            throw InputError("world '" + w.name + "' has id " + std::to_string(w.id) +
                             " at position " + std::to_string(k));
        }
        if (!(w.likelihood >= 0.0 && w.likelihood <= 1.0 + kNormTolerance)) {
            throw InputError("world '" + w.name + "' has likelihood outside [0, 1]");
        }
        if (w.measured.has_value() != w.intermediate_outcome.has_value()) {
            throw InputError("world '" + w.name +
                             "': an intermediate outcome is recorded iff a measurement happened");
        }
        context_totals[w.measured.value_or("")] += w.likelihood;
    }
    for (const auto& [context, total] : context_totals) {
        if (std::abs(total - 1.0) > kNormTolerance) {
            throw InputError("likelihoods in context '" + (context.empty() ? "unmeasured" : context) +
                             "' sum to " + std::to_string(total) + ", not 1");
        }
    }
    if (actual_ >= worlds_.size()) {
        throw InputError("actual world id out of range");
    }
    if (worlds_[actual_].measured) {
        throw InputError("the actual world must be one where the antecedent does not hold");
    }
    if (worlds_[actual_].likelihood <= kZeroProbability) {
        throw Error(ErrorKind::invalid_scenario,
                    "the actual world '" + worlds_[actual_].name +
                        "' has zero likelihood: the factual pre- and post-selection is impossible");
    }
}

WorldSet WorldSpace::possible() const {
    WorldSet s;
    for (const auto& w : worlds_) {
        if (w.likelihood > kZeroProbability) {
            s.insert(w.id);
        }
    }
    return s;
}

Proposition WorldSpace::antecedent() const {
    WorldSet s;
    for (const auto& w : worlds_) {
        if (w.measured) {
            s.insert(w.id);
        }
    }
    return {"P", s};
}

Proposition WorldSpace::same_post_outcome() const {
    auto t = post_outcome_is(worlds_[actual_].post_outcome);
    t.name = "T";
    return t;
}

Proposition WorldSpace::abl_governs() const {
    auto q = same_post_outcome();
    q.name = "Q";
    return q;
}

Proposition WorldSpace::post_outcome_is(const std::string& label) const {
    WorldSet s;
    for (const auto& w : worlds_) {
        if (w.post_outcome == label) {
            s.insert(w.id);
        }
    }
    return {"post=" + label, s};
}

double WorldSpace::total_likelihood(WorldSet set) const {
    double total = 0.0;
    for (auto id : set.ids()) {
        total += worlds_.at(id).likelihood;
    }
    return total;
}

std::optional<WorldId> WorldSpace::find(std::string_view name) const {
    for (const auto& w : worlds_) {
        if (w.name == name) {
            return w.id;
        }
    }
    return std::nullopt;
}

WorldSpace build_world_space(const TwoStateVector& tsv, const Observable& obs) {
    if (obs.dim() != tsv.dim()) {
        throw InputError("observable '" + obs.name() + "' does not match the two-state vector dimension");
    }
    if (2 + 2 * obs.dim() > kMaxWorlds) {
        throw InputError("dimension " + std::to_string(obs.dim()) + " yields too many worlds");
    }
    std::vector<World> worlds;
    const double factual = postselection_prob(tsv);
    worlds.push_back({0, "i", std::nullopt, std::nullopt, "b", factual});
    worlds.push_back({1, "~P:not-b", std::nullopt, std::nullopt, "not-b", std::max(0.0, 1.0 - factual)});
    for (std::size_t k = 0; k < obs.dim(); ++k) {
        const auto& ck = obs.eigenvector(k);
        const double reach = std::norm(inner_product(ck, tsv.pre()));
        const double to_b = std::norm(inner_product(tsv.post(), ck));
        const auto& label = obs.label(k);
        worlds.push_back({worlds.size(), "P:" + label + ":b", obs.name(), label, "b", reach * to_b});
        worlds.push_back({worlds.size(), "P:" + label + ":not-b", obs.name(), label, "not-b",
                          reach * std::max(0.0, 1.0 - to_b)});
    }
    return WorldSpace(std::move(worlds), 0);
}

WorldSpace build_classical_world_space(const ClassicalModel& model) {
    const ClassicalModel::Context* factual = nullptr;
    std::size_t antecedent_contexts = 0;
    for (const auto& ctx : model.contexts) {
        if (ctx.antecedent) {
            ++antecedent_contexts;
        } else if (factual != nullptr) {
            throw InputError("classical model needs exactly one non-antecedent context");
        } else {
            factual = &ctx;
        }
    }
    if (factual == nullptr || antecedent_contexts != 1) {
        throw InputError("classical model needs one factual and one antecedent context");
    }
    std::vector<World> worlds;
    std::optional<WorldId> actual;
    for (const auto& outcome : factual->outcomes) {
        const WorldId id = worlds.size();
        if (outcome.label == model.actual_outcome) {
            actual = id;
        }
        worlds.push_back({id, factual->name + ":" + outcome.label, std::nullopt, std::nullopt,
                          outcome.label, outcome.likelihood});
    }
    if (!actual) {
        throw InputError("actual outcome '" + model.actual_outcome + "' is not an outcome of context '" +
                         factual->name + "'");
    }
    for (const auto& ctx : model.contexts) {
        if (!ctx.antecedent) {
            continue;
        }
        for (const auto& outcome : ctx.outcomes) {
            worlds.push_back({worlds.size(), "P:" + ctx.name + ":" + outcome.label, ctx.name, ctx.name,
                              outcome.label, outcome.likelihood});
        }
    }
    return WorldSpace(std::move(worlds), *actual);
}

WorldSet SphereSystem::accessible() const {
    WorldSet u;
    for (auto s : spheres) {
        u = u | s;
    }
    return u;
}

std::optional<std::size_t> SphereSystem::rank_of(WorldId id) const {
    for (std::size_t k = 0; k < spheres.size(); ++k) {
        if (spheres[k].contains(id)) {
            return k;
        }
    }
    return std::nullopt;
}

std::vector<SphereViolation> validate_spheres(const SphereSystem& s) {
    std::vector<SphereViolation> out;
    if (s.spheres.empty()) {
        out.push_back({SphereViolation::Kind::no_spheres, 0, "the system has no spheres"});
        return out;
    }
    if (!s.spheres.front().contains(s.center)) {
        out.push_back({SphereViolation::Kind::centering, 0,
                       "center " + std::to_string(s.center) + " is not in the smallest sphere"});
    }
    for (std::size_t k = 1; k < s.spheres.size(); ++k) {
        if (!s.spheres[k - 1].subset_of(s.spheres[k])) {
            out.push_back({SphereViolation::Kind::nesting, k,
                           "sphere " + std::to_string(k) + " does not contain sphere " +
                               std::to_string(k - 1) + " (missing " +
                               describe_ids((s.spheres[k - 1] - s.spheres[k]).ids()) + ")"});
        }
    }
    return out;
}

bool cotenable(const Proposition& x, const Proposition& phi, const SphereSystem& s) {
    require_valid(s);
    for (auto sphere : s.spheres) {
        if (sphere.intersects(phi.extension) && sphere.subset_of(x.extension)) {
            return true;
        }
    }
    return false;
}

Verdict eval_counterfactual(const Proposition& p, const Proposition& q, const SphereSystem& s) {
    require_valid(s);
    if (!p.extension.intersects(s.accessible())) {
        return Verdict::vacuous;
    }
    for (auto sphere : s.spheres) {
        if (sphere.intersects(p.extension) && (sphere & p.extension).subset_of(q.extension)) {
            return Verdict::holds;
        }
    }
    return Verdict::fails;
}

AuxiliaryResult eval_via_auxiliary(const Proposition& p, const Proposition& q, const SphereSystem& s,
                                   std::span<const Proposition> premises,
                                   std::optional<std::size_t> exhaustive_universe) {
    require_valid(s);
    if (!p.extension.intersects(s.accessible())) {
        return {Verdict::vacuous, std::nullopt};
    }
    auto works = [&](const Proposition& x) {
        return cotenable(x, p, s) && (p.extension & x.extension).subset_of(q.extension);
    };
    for (const auto& x : premises) {
        if (works(x)) {
            return {Verdict::holds, x};
        }
    }
    if (exhaustive_universe) {
        const std::size_t n = *exhaustive_universe;
        if (n > kMaxExhaustiveWorlds) {
            throw InputError("exhaustive premise search is limited to " +
                             std::to_string(kMaxExhaustiveWorlds) + " worlds");
        }
        std::optional<Proposition> found;
        for (std::size_t r = 0; r <= n && !found; ++r) {
            for_each_combination(n, r, [&](WorldSet candidate) {
                Proposition x{"X" + describe_ids(candidate.ids()), candidate};
                if (works(x)) {
                    found = std::move(x);
                    return true;
                }
                return false;
            });
        }
        if (found) {
            return {Verdict::holds, std::move(found)};
        }
    }
    return {Verdict::fails, std::nullopt};
}

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::holds:
        return "true";
    case Verdict::fails:
        return "false";
    case Verdict::vacuous:
        return "vacuously-true";
    }
    return "unknown";
}

} // namespace ablsem

#include "ablsem/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace ablsem {

namespace {

using nlohmann::json;

std::size_t line_at(std::string_view source, std::size_t offset) {
    offset = std::min(offset, source.size());
    std::size_t line = 1;
    for (std::size_t k = 0; k < offset; ++k) {
        line += source[k] == '\n' ? 1 : 0;
    }
    return line;
}

// Best-effort source line of a field path such as "observables[1].eigenbasis[0]".
// Keys are searched in order; an index before a key selects that key's n-th
// occurrence.
std::size_t locate(std::string_view source, const std::string& path) {
    std::size_t pos = 0;
    std::size_t skip = 0;
    bool found_any = false;
    std::size_t k = 0;
    while (k < path.size()) {
        if (path[k] == '.') {
            ++k;
            continue;
        }
        if (path[k] == '[') {
            const auto close = path.find(']', k);
            skip = std::stoul(path.substr(k + 1, close - k - 1));
            k = close + 1;
            continue;
        }
        const auto end = path.find_first_of(".[", k);
        const std::string key = "\"" + path.substr(k, end - k) + "\"";
        k = end == std::string::npos ? path.size() : end;
        std::size_t at = source.find(key, pos);
        for (std::size_t n = 0; n < skip && at != std::string_view::npos; ++n) {
            at = source.find(key, at + key.size());
        }
        skip = 0;
        if (at == std::string_view::npos) {
            break;
        }
        pos = at;
        found_any = true;
    }
    return found_any ? line_at(source, pos) : 0;
}

class Reader {
  public:
    explicit Reader(std::string_view source) : source_(source) {}

    [[noreturn]] void fail(const std::string& path, const std::string& message) const {
        throw ScenarioError(path, locate(source_, path), message);
    }

    const json& field(const json& obj, const std::string& key, const std::string& path) const {
        const auto it = obj.find(key);
        if (it == obj.end()) {
            fail(path, "missing required field '" + key + "'");
        }
        return *it;
    }

    void only_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& path) const {
        const std::set<std::string> keys(allowed.begin(), allowed.end());
        for (const auto& [key, value] : obj.items()) {
            if (!keys.contains(key)) {
                fail(path.empty() ? key : path + "." + key, "unknown field '" + key + "'");
            }
        }
    }

    std::string string(const json& v, const std::string& path) const {
        if (!v.is_string()) {
            fail(path, "expected a string");
        }
        return v.get<std::string>();
    }

    double number(const json& v, const std::string& path) const {
        if (!v.is_number()) {
            fail(path, "expected a number");
        }
        return v.get<double>();
    }

    std::uint64_t count(const json& v, const std::string& path) const {
        if (!v.is_number_unsigned()) {
            fail(path, "expected a non-negative integer");
        }
        return v.get<std::uint64_t>();
    }

    const json& array(const json& v, const std::string& path) const {
        if (!v.is_array()) {
            fail(path, "expected an array");
        }
        return v;
    }

    const json& object(const json& v, const std::string& path) const {
        if (!v.is_object()) {
            fail(path, "expected an object");
        }
        return v;
    }

    std::vector<Complex> amplitudes(const json& v, const std::string& path, std::size_t dim) const {
        array(v, path);
        if (v.size() != dim) {
            fail(path, "expected " + std::to_string(dim) + " amplitudes, got " + std::to_string(v.size()));
        }
        std::vector<Complex> out;
        for (std::size_t k = 0; k < v.size(); ++k) {
            const auto item_path = path + "[" + std::to_string(k) + "]";
            const auto& pair = v[k];
            if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
                fail(item_path, "expected a complex number as [re, im]");
            }
            out.emplace_back(pair[0].get<double>(), pair[1].get<double>());
        }
        return out;
    }

    PureState state(const json& v, const std::string& path, std::size_t dim) const {
        auto amps = amplitudes(v, path, dim);
        try {
            return PureState(std::move(amps));
        } catch (const InputError& e) {
            fail(path, e.what());
        }
    }

  private:
    std::string_view source_;
};

Observable read_observable(const Reader& r, const json& v, const std::string& path, std::size_t dim) {
    r.object(v, path);
    r.only_keys(v, {"name", "labels", "eigenbasis"}, path);
    const auto name = r.string(r.field(v, "name", path), path + ".name");
    const auto& labels_json = r.array(r.field(v, "labels", path), path + ".labels");
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < labels_json.size(); ++k) {
        labels.push_back(r.string(labels_json[k], path + ".labels[" + std::to_string(k) + "]"));
    }
    const auto basis_path = path + ".eigenbasis";
    const auto& rows = r.array(r.field(v, "eigenbasis", path), basis_path);
    if (rows.size() != dim) {
        r.fail(basis_path, "expected " + std::to_string(dim) + " eigenvectors, got " + std::to_string(rows.size()));
    }
    std::vector<PureState> eigenvectors;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        eigenvectors.push_back(r.state(rows[k], basis_path + "[" + std::to_string(k) + "]", dim));
    }
    try {
        return Observable(name, std::move(eigenvectors), std::move(labels));
    } catch (const InputError& e) {
        r.fail(basis_path, e.what());
    }
}

ClassicalModel read_classical(const Reader& r, const json& doc) {
    ClassicalModel model;
    const auto& contexts = r.array(r.field(doc, "contexts", ""), "contexts");
    for (std::size_t c = 0; c < contexts.size(); ++c) {
        const auto path = "contexts[" + std::to_string(c) + "]";
        const auto& ctx = r.object(contexts[c], path);
        r.only_keys(ctx, {"name", "antecedent", "outcomes"}, path);
        ClassicalModel::Context context;
        context.name = r.string(r.field(ctx, "name", path), path + ".name");
        const auto& antecedent = r.field(ctx, "antecedent", path);
        if (!antecedent.is_boolean()) {
            r.fail(path + ".antecedent", "expected true or false");
        }
        context.antecedent = antecedent.get<bool>();
        const auto outcomes_path = path + ".outcomes";
        const auto& outcomes = r.array(r.field(ctx, "outcomes", path), outcomes_path);
        double total = 0.0;
        for (std::size_t k = 0; k < outcomes.size(); ++k) {
            const auto opath = outcomes_path + "[" + std::to_string(k) + "]";
            const auto& o = r.object(outcomes[k], opath);
            r.only_keys(o, {"label", "likelihood"}, opath);
            ClassicalModel::Outcome outcome;
            outcome.label = r.string(r.field(o, "label", opath), opath + ".label");
            outcome.likelihood = r.number(r.field(o, "likelihood", opath), opath + ".likelihood");
            if (!(outcome.likelihood >= 0.0 && outcome.likelihood <= 1.0)) {
                r.fail(opath + ".likelihood", "likelihood must lie in [0, 1]");
            }
            total += outcome.likelihood;
            context.outcomes.push_back(std::move(outcome));
        }
        if (std::abs(total - 1.0) > kNormTolerance) {
            r.fail(outcomes_path, "likelihoods sum to " + std::to_string(total) + ", not 1");
        }
        model.contexts.push_back(std::move(context));
    }
    model.actual_outcome = r.string(r.field(doc, "actual_outcome", ""), "actual_outcome");
    try {
        (void)build_classical_world_space(model);
    } catch (const Error& e) {
        r.fail("contexts", e.what());
    }
    return model;
}

} // namespace

namespace {

// "<file>:<line>: <path>: <detail>", omitting absent parts.
std::string compose(const std::string& file, std::size_t line, const std::string& path,
                    const std::string& detail) {
    std::string out = file;
    if (line > 0) {
        out += (file.empty() ? "line " : ":") + std::to_string(line);
    }
    if (!out.empty()) {
        out += ": ";
    }
    if (!path.empty()) {
        out += path + ": ";
    }
    return out + detail;
}

} // namespace

ScenarioError::ScenarioError(std::string path, std::size_t line, std::string detail, std::string file)
    : InputError(compose(file, line, path, detail)), path_(std::move(path)), line_(line),
      detail_(std::move(detail)) {}

const Observable& Scenario::observable(std::string_view name) const {
    for (const auto& obs : observables) {
        if (obs.name() == name) {
            return obs;
        }
    }
    std::string known;
    for (const auto& obs : observables) {
        known += (known.empty() ? "" : ", ") + obs.name();
    }
    throw InputError("scenario '" + this->name + "' has no observable '" + std::string(name) +
                     "' (available: " + (known.empty() ? "none" : known) + ")");
}

const TwoStateVector& Scenario::two_state() const {
    if (!states) {
        throw InputError("scenario '" + name + "' is classical and has no two-state vector");
    }
    return *states;
}

Scenario parse_scenario(std::string_view source) {
    json doc;
    try {
        doc = json::parse(source.begin(), source.end());
    } catch (const json::parse_error& e) {
        throw ScenarioError("", line_at(source, e.byte > 0 ? e.byte - 1 : 0),
                            std::string("malformed document: ") + e.what());
    }
    const Reader r(source);
    r.object(doc, "");

    Scenario sc;
    sc.name = r.string(r.field(doc, "name", ""), "name");
    const std::string kind = doc.contains("kind") ? r.string(doc["kind"], "kind") : "quantum";
    if (doc.contains("note")) {
        sc.note = r.string(doc["note"], "note");
    }
    if (kind == "classical") {
        r.only_keys(doc, {"name", "kind", "note", "contexts", "actual_outcome"}, "");
        sc.kind = ScenarioKind::classical;
        sc.classical = read_classical(r, doc);
        return sc;
    }
    if (kind != "quantum") {
        r.fail("kind", "kind must be 'quantum' or 'classical'");
    }
    r.only_keys(doc, {"name", "kind", "note", "dim", "pre_state", "post_state", "observables", "ensemble", "timeline"},
                "");
    const auto dim = r.count(r.field(doc, "dim", ""), "dim");
    if (dim < 2) {
        r.fail("dim", "dimension must be at least 2");
    }
    sc.dim = dim;
    auto pre = r.state(r.field(doc, "pre_state", ""), "pre_state", dim);
    auto post = r.state(r.field(doc, "post_state", ""), "post_state", dim);
    TwoStateVector::Timeline timeline{"t1", "t", "t2"};
    if (doc.contains("timeline")) {
        const auto& t = r.array(doc["timeline"], "timeline");
        if (t.size() != 3) {
            r.fail("timeline", "expected three labels (pre-selection, intermediate, post-selection)");
        }
        for (std::size_t k = 0; k < 3; ++k) {
            timeline[k] = r.string(t[k], "timeline[" + std::to_string(k) + "]");
        }
    }
    try {
        sc.states.emplace(std::move(pre), std::move(post), timeline);
    } catch (const InputError& e) {
        r.fail("timeline", e.what());
    }

    const auto& observables = r.array(r.field(doc, "observables", ""), "observables");
    std::set<std::string> names;
    for (std::size_t k = 0; k < observables.size(); ++k) {
        const auto path = "observables[" + std::to_string(k) + "]";
        auto obs = read_observable(r, observables[k], path, dim);
        if (!names.insert(obs.name()).second) {
            r.fail(path + ".name", "duplicate observable name '" + obs.name() + "'");
        }
        sc.observables.push_back(std::move(obs));
    }

    if (doc.contains("ensemble")) {
        const auto& e = r.object(doc["ensemble"], "ensemble");
        r.only_keys(e, {"runs", "seed"}, "ensemble");
        if (e.contains("runs")) {
            sc.ensemble.runs = r.count(e["runs"], "ensemble.runs");
            if (sc.ensemble.runs == 0) {
                r.fail("ensemble.runs", "runs must be at least 1");
            }
        }
        if (e.contains("seed")) {
            sc.ensemble.seed = r.count(e["seed"], "ensemble.seed");
        }
    }
    return sc;
}

Scenario load_scenario(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
        throw InputError("cannot open scenario file '" + file.string() + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    try {
        return parse_scenario(text.str());
    } catch (const ScenarioError& e) {
        throw ScenarioError(e.path(), e.line(), e.detail(), file.string());
    }
}

std::string to_string(ScenarioKind k) { return k == ScenarioKind::quantum ? "quantum" : "classical"; }

} // namespace ablsem

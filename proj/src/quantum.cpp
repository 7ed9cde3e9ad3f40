#include "ablsem/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_set>

#include "ablsem/rng.hpp"

namespace ablsem {

namespace {

double squared_norm(std::span<const Complex> v) {
    double sum = 0.0;
    for (const auto& a : v) {
        sum += std::norm(a);
    }
    return sum;
}

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw InputError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                         " vs " + std::to_string(b) + ")");
    }
}

} // namespace

PureState::PureState(std::vector<Complex> amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() < 2) {
        throw InputError("state dimension must be at least 2, got " +
                         std::to_string(amplitudes_.size()));
    }
    for (const auto& a : amplitudes_) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw InputError("state has a non-finite amplitude");
        }
    }
    const double norm2 = squared_norm(amplitudes_);
    if (std::abs(norm2 - 1.0) > kNormTolerance) {
        throw InputError("state is not unit norm (squared norm " + std::to_string(norm2) + ")");
    }
}

PureState PureState::normalized(std::vector<Complex> amplitudes) {
    const double norm = std::sqrt(squared_norm(amplitudes));
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw InputError("cannot normalize a zero or non-finite vector");
    }
    for (auto& a : amplitudes) {
        a /= norm;
    }
    return PureState(std::move(amplitudes));
}

PureState PureState::conjugate() const {
    std::vector<Complex> out(amplitudes_.size());
    std::transform(amplitudes_.begin(), amplitudes_.end(), out.begin(),
                   [](const Complex& a) { return std::conj(a); });
    return PureState(std::move(out));
}

Observable::Observable(std::string name, std::vector<PureState> eigenvectors,
                       std::vector<std::string> labels)
    : name_(std::move(name)), eigenvectors_(std::move(eigenvectors)), labels_(std::move(labels)) {
    if (name_.empty()) {
        throw InputError("observable name must not be empty");
    }
    if (eigenvectors_.size() < 2) {
        throw InputError("observable '" + name_ + "' needs at least 2 eigenvectors");
    }
    if (labels_.size() != eigenvectors_.size()) {
        throw InputError("observable '" + name_ + "' has " + std::to_string(labels_.size()) +
                         " labels for " + std::to_string(eigenvectors_.size()) + " eigenvectors");
    }
    const std::size_t d = eigenvectors_.size();
    for (std::size_t k = 0; k < d; ++k) {
        if (eigenvectors_[k].dim() != d) {
            throw InputError("observable '" + name_ + "': eigenvector " + std::to_string(k) +
                             " has dimension " + std::to_string(eigenvectors_[k].dim()) +
                             ", expected " + std::to_string(d));
        }
    }
    for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t l = k + 1; l < d; ++l) {
            if (std::abs(inner_product(eigenvectors_[k], eigenvectors_[l])) > kNormTolerance) {
                throw InputError("observable '" + name_ + "': eigenvectors " + std::to_string(k) +
                                 " and " + std::to_string(l) + " are not orthogonal");
            }
        }
    }
    std::unordered_set<std::string> seen;
    for (const auto& label : labels_) {
        if (!seen.insert(label).second) {
            throw InputError("observable '" + name_ + "': duplicate outcome label '" + label +
                             "' (degenerate observables are not supported)");
        }
    }
}

std::optional<std::size_t> Observable::index_of(std::string_view label) const {
    const auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - labels_.begin());
}

Complex inner_product(const PureState& x, const PureState& y) {
    require_same_dim(x.dim(), y.dim(), "inner_product");
    Complex sum{0.0, 0.0};
    for (std::size_t i = 0; i < x.dim(); ++i) {
        sum += std::conj(x[i]) * y[i];
    }
    return sum;
}

double born_probability(const PureState& state, const Observable& obs, std::size_t k) {
    require_same_dim(state.dim(), obs.dim(), "born_probability");
    if (k >= obs.dim()) {
        throw InputError("outcome index " + std::to_string(k) + " out of range for observable '" +
                         obs.name() + "'");
    }
    return std::norm(inner_product(obs.eigenvector(k), state));
}

PureState collapse(const PureState& state, const Observable& obs, std::size_t k) {
    if (born_probability(state, obs, k) <= kZeroProbability) {
        throw Error(ErrorKind::impossible_collapse,
                    "cannot collapse onto outcome '" + obs.label(k) + "' of '" + obs.name() +
                        "': it has zero probability");
    }
    return obs.eigenvector(k);
}

PureState random_state(std::size_t dim, std::uint64_t seed) {
    if (dim < 2) {
        throw InputError("random_state: dimension must be at least 2");
    }
    DrawSource draws(derive_seed(seed, dim));
    for (;;) {
        std::vector<Complex> amplitudes(dim);
        for (auto& a : amplitudes) {
            const double re = draws.normal();
            const double im = draws.normal();
            a = Complex(re, im);
        }
        if (squared_norm(amplitudes) > 1e-6) {
            return PureState::normalized(std::move(amplitudes));
        }
    }
}

std::vector<PureState> complete_basis(const PureState& first) {
    const std::size_t d = first.dim();
    std::vector<std::vector<Complex>> basis;
    basis.emplace_back(first.amplitudes().begin(), first.amplitudes().end());
    for (std::size_t e = 0; e < d && basis.size() < d; ++e) {
        std::vector<Complex> v(d, Complex{0.0, 0.0});
        v[e] = 1.0;
        for (const auto& u : basis) {
            Complex overlap{0.0, 0.0};
            for (std::size_t i = 0; i < d; ++i) {
                overlap += std::conj(u[i]) * v[i];
            }
            for (std::size_t i = 0; i < d; ++i) {
                v[i] -= overlap * u[i];
            }
        }
        const double norm = std::sqrt(squared_norm(v));
        if (norm < 1e-8) {
            continue;
        }
        for (auto& a : v) {
            a /= norm;
        }
        basis.push_back(std::move(v));
    }
    std::vector<PureState> out;
    out.reserve(d);
    out.push_back(first);
    for (std::size_t k = 1; k < basis.size(); ++k) {
        out.push_back(PureState::normalized(std::move(basis[k])));
    }
    return out;
}

namespace spin {

namespace {
constexpr double kHalfRoot = std::numbers::sqrt2 / 2.0;
} // namespace

PureState z_plus() { return PureState({1.0, 0.0}); }
PureState z_minus() { return PureState({0.0, 1.0}); }
PureState x_plus() { return PureState({kHalfRoot, kHalfRoot}); }
PureState x_minus() { return PureState({kHalfRoot, -kHalfRoot}); }
PureState y_plus() { return PureState({Complex(kHalfRoot, 0.0), Complex(0.0, kHalfRoot)}); }
PureState y_minus() { return PureState({Complex(kHalfRoot, 0.0), Complex(0.0, -kHalfRoot)}); }

Observable sigma_z() { return Observable("sigma_z", {z_plus(), z_minus()}, {"+1", "-1"}); }
Observable sigma_x() { return Observable("sigma_x", {x_plus(), x_minus()}, {"+1", "-1"}); }
Observable sigma_y() { return Observable("sigma_y", {y_plus(), y_minus()}, {"+1", "-1"}); }

} // namespace spin

} // namespace ablsem

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ablsem/error.hpp"

namespace ablsem {

using Complex = std::complex<double>;

/// Tolerance for unit norm and orthonormality of user supplied vectors.
inline constexpr double kNormTolerance = 1e-10;

/// Probabilities at or below this are treated as impossible events.
inline constexpr double kZeroProbability = 1e-12;

/// Unit-norm amplitude vector, dimension >= 2. Immutable after construction.
class PureState {
  public:
    /// Rejects (InputError) anything that is not already unit norm within kNormTolerance.
    explicit PureState(std::vector<Complex> amplitudes);

    /// Rescales `amplitudes` to unit norm. Rejects the zero vector.
    static PureState normalized(std::vector<Complex> amplitudes);

    [[nodiscard]] std::size_t dim() const noexcept { return amplitudes_.size(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
    [[nodiscard]] const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }

    /// Componentwise complex conjugate.
    [[nodiscard]] PureState conjugate() const;

    friend bool operator==(const PureState&, const PureState&) = default;

  private:
    std::vector<Complex> amplitudes_;
};

/**
 * A nondegenerate observable given by its orthonormal eigenbasis.
 *
 * Outcome k corresponds to eigenvector k and carries label k; labels are
 * pairwise distinct. Bases that are not orthonormal within kNormTolerance
 * are rejected, never repaired.
 */
class Observable {
  public:
    Observable(std::string name, std::vector<PureState> eigenvectors,
               std::vector<std::string> labels);

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] std::size_t dim() const noexcept { return eigenvectors_.size(); }
    [[nodiscard]] std::span<const PureState> eigenvectors() const noexcept { return eigenvectors_; }
    [[nodiscard]] const PureState& eigenvector(std::size_t k) const { return eigenvectors_.at(k); }
    [[nodiscard]] std::span<const std::string> labels() const noexcept { return labels_; }
    [[nodiscard]] const std::string& label(std::size_t k) const { return labels_.at(k); }
    [[nodiscard]] std::optional<std::size_t> index_of(std::string_view label) const;

  private:
    std::string name_;
    std::vector<PureState> eigenvectors_;
    std::vector<std::string> labels_;
};

/// <x|y>, conjugate-linear in x.
Complex inner_product(const PureState& x, const PureState& y);

/// |<c_k|state>|^2.
double born_probability(const PureState& state, const Observable& obs, std::size_t k);

/// Post-measurement state for outcome k. Throws on a zero-probability outcome.
PureState collapse(const PureState& state, const Observable& obs, std::size_t k);

/// Normalized complex Gaussian vector; a pure function of (dim, seed).
PureState random_state(std::size_t dim, std::uint64_t seed);

/// Orthonormal basis whose first element is `first`, completed by Gram-Schmidt
/// over the canonical vectors.
std::vector<PureState> complete_basis(const PureState& first);

namespace spin {

PureState z_plus();
PureState z_minus();
PureState x_plus();
PureState x_minus();
PureState y_plus();
PureState y_minus();

/// Pauli observables with outcome labels "+1" and "-1".
Observable sigma_z();
Observable sigma_x();
Observable sigma_y();

} // namespace spin

} // namespace ablsem

#include <gtest/gtest.h>

#include <cmath>

#include "ablsem/error.hpp"
#include "ablsem/quantum.hpp"
#include "support/oracles.hpp"

namespace ablsem {
namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

TEST(PureState, RejectsBadInput) {
    EXPECT_THROW(PureState({Complex{1.0, 0.0}}), InputError);
    EXPECT_THROW(PureState({Complex{1.0, 0.0}, Complex{1.0, 0.0}}), InputError);
    EXPECT_THROW(PureState({Complex{NAN, 0.0}, Complex{0.0, 0.0}}), InputError);
    EXPECT_THROW(PureState::normalized({Complex{0.0, 0.0}, Complex{0.0, 0.0}}), InputError);
}

TEST(PureState, NormalizedScalesToUnitNorm) {
    const auto s = PureState::normalized({Complex{3.0, 0.0}, Complex{0.0, 4.0}});
    EXPECT_NEAR(std::abs(s[0]), 0.6, 1e-15);
    EXPECT_NEAR(std::abs(s[1]), 0.8, 1e-15);
}

TEST(InnerProduct, SpinExamples) {
    EXPECT_NEAR(std::abs(inner_product(spin::z_plus(), spin::z_plus()) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(inner_product(spin::z_plus(), spin::z_minus())), 0.0, 1e-15);
    const auto xz = inner_product(spin::x_plus(), spin::z_plus());
    EXPECT_NEAR(xz.real(), kInvSqrt2, 1e-15);
    EXPECT_NEAR(xz.imag(), 0.0, 1e-15);
}

TEST(InnerProduct, ConjugatesFirstArgument) {
    const auto v = inner_product(spin::y_plus(), spin::z_plus());
    // |y+> = (1, i)/sqrt2, so <y+|z+> = 1/sqrt2 and <z+|y+> = 0
    EXPECT_NEAR(v.real(), kInvSqrt2, 1e-15);
    const auto w = inner_product(spin::z_minus(), spin::y_plus());
    EXPECT_NEAR(w.imag(), kInvSqrt2, 1e-15);
}

TEST(InnerProduct, DimensionMismatchRejected) {
    EXPECT_THROW(inner_product(spin::z_plus(), random_state(3, 1)), InputError);
}

TEST(InnerProduct, ConjugateSymmetryProperty) {
    for (std::uint64_t s = 0; s < 200; ++s) {
        const std::size_t d = 2 + s % 7;
        const auto x = random_state(d, s);
        const auto y = random_state(d, s + 1000);
        const auto xy = inner_product(x, y);
        const auto yx = inner_product(y, x);
        EXPECT_NEAR(xy.real(), yx.real(), 1e-12);
        EXPECT_NEAR(xy.imag(), -yx.imag(), 1e-12);
        EXPECT_LE(std::abs(xy), 1.0 + 1e-10);
    }
}

TEST(Observable, ValidatesBasisAndLabels) {
    EXPECT_THROW(Observable("bad", {spin::z_plus(), spin::z_plus()}, {"a", "b"}), InputError);
    EXPECT_THROW(Observable("bad", {spin::z_plus(), spin::z_minus()}, {"a", "a"}), InputError);
    EXPECT_THROW(Observable("bad", {spin::z_plus(), spin::x_plus()}, {"a", "b"}), InputError);
    EXPECT_THROW(Observable("bad", {spin::z_plus()}, {"a"}), InputError);
    const auto z = spin::sigma_z();
    EXPECT_EQ(z.index_of("-1"), 1U);
    EXPECT_FALSE(z.index_of("0").has_value());
}

TEST(BornProbability, SpinExamples) {
    EXPECT_NEAR(born_probability(spin::z_plus(), spin::sigma_z(), 0), 1.0, 1e-15);
    EXPECT_NEAR(born_probability(spin::z_plus(), spin::sigma_x(), 0), 0.5, 1e-15);
    EXPECT_NEAR(born_probability(spin::z_plus(), spin::sigma_z(), 1), 0.0, 1e-15);
    EXPECT_THROW(born_probability(spin::z_plus(), spin::sigma_z(), 2), InputError);
}

TEST(BornProbability, SumsToOneProperty) {
    for (std::uint64_t s = 0; s < 300; ++s) {
        const std::size_t d = 2 + s % 7;
        const auto state = random_state(d, s);
        const auto obs = oracle::random_observable(d, s);
        double total = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
            const double p = born_probability(state, obs, k);
            EXPECT_GE(p, 0.0);
            EXPECT_LE(p, 1.0 + 1e-12);
            total += p;
        }
        EXPECT_NEAR(total, 1.0, 1e-10);
    }
}

TEST(Collapse, SpinExamples) {
    EXPECT_EQ(collapse(spin::z_plus(), spin::sigma_z(), 0), spin::z_plus());
    EXPECT_EQ(collapse(spin::z_plus(), spin::sigma_x(), 0), spin::x_plus());
    try {
        collapse(spin::z_plus(), spin::sigma_z(), 1);
        FAIL() << "expected impossible collapse";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::impossible_collapse);
    }
}

TEST(Collapse, IdempotentProperty) {
    for (std::uint64_t s = 0; s < 100; ++s) {
        const std::size_t d = 2 + s % 5;
        const auto state = random_state(d, s);
        const auto obs = oracle::random_observable(d, s + 7);
        for (std::size_t k = 0; k < d; ++k) {
            const auto once = collapse(state, obs, k);
            EXPECT_EQ(collapse(once, obs, k), once);
        }
    }
}

TEST(RandomState, DeterministicAndNormalized) {
    EXPECT_EQ(random_state(2, 42), random_state(2, 42));
    EXPECT_NE(random_state(2, 42), random_state(2, 43));
    const auto s = random_state(4, 9);
    double n = 0.0;
    for (const auto& a : s.amplitudes()) {
        n += std::norm(a);
    }
    EXPECT_NEAR(n, 1.0, 1e-10);
    EXPECT_THROW(random_state(1, 0), InputError);
}

TEST(RandomState, ComponentsLookUnbiased) {
    // Mean |amplitude_0|^2 over many draws is 1/d for a unitarily invariant ensemble.
    for (std::size_t d : {2U, 3U, 5U}) {
        double mean = 0.0;
        const int n = 20000;
        for (int s = 0; s < n; ++s) {
            mean += std::norm(random_state(d, static_cast<std::uint64_t>(s))[0]);
        }
        mean /= n;
        EXPECT_NEAR(mean, 1.0 / static_cast<double>(d), 0.01) << "dim " << d;
    }
}

TEST(CompleteBasis, OrthonormalWithGivenFirstVector) {
    for (std::uint64_t s = 0; s < 50; ++s) {
        const std::size_t d = 2 + s % 7;
        const auto first = random_state(d, s);
        const auto basis = complete_basis(first);
        ASSERT_EQ(basis.size(), d);
        EXPECT_EQ(basis[0], first);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                EXPECT_NEAR(std::abs(inner_product(basis[i], basis[j])), i == j ? 1.0 : 0.0, 1e-10);
            }
        }
    }
}

} // namespace
} // namespace ablsem

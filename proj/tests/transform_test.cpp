#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "smf/distance.hpp"
#include "smf/transform.hpp"

using smf::dft_transform;
using smf::paa_transform;
using smf::SequenceSlice;
using smf::TransformSpec;

namespace {

double l2(const SequenceSlice& a, const SequenceSlice& b) {
    return (a.values() - b.values()).norm();
}

} // namespace

TEST_CASE("dft of a constant sequence is all DC") {
    const auto out = dft_transform(oracle::slice("s", {1, 1, 1, 1}), 1);
    REQUIRE(out.len() == 2);
    CHECK(out.values()(0, 0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(out.values()(0, 1) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("dft truncation drops Nyquist energy of an alternating sequence") {
    const auto out = dft_transform(oracle::slice("s", {1, -1, 1, -1}), 2);
    REQUIRE(out.len() == 4);
    for (smf::Index i = 0; i < 4; ++i)
        CHECK(out.values()(0, i) == doctest::Approx(0.0).epsilon(1e-12));

    // cross-check against the direct textbook evaluation
    const auto full = oracle::naive_dft({1, -1, 1, -1});
    CHECK(std::abs(full[0]) == doctest::Approx(0.0));
    CHECK(std::abs(full[1]) == doctest::Approx(0.0));
    CHECK(std::abs(full[2]) == doctest::Approx(2.0)); // the truncated coefficient
}

TEST_CASE("dft matches the naive oracle on fft and direct paths") {
    auto gen = oracle::rng(31);
    for (std::size_t n : {5, 16, 64, 96, 128, 256}) { // 128/256 take the fft path
        const auto values = oracle::random_values(gen, n);
        const auto out = dft_transform(oracle::slice("s", values), smf::Index(n));
        const auto expected = oracle::naive_dft(values);
        for (std::size_t f = 0; f < n; ++f) {
            CHECK(out.values()(0, 2 * smf::Index(f)) ==
                  doctest::Approx(expected[f].real()).epsilon(1e-9));
            CHECK(out.values()(0, 2 * smf::Index(f) + 1) ==
                  doctest::Approx(expected[f].imag()).epsilon(1e-9));
        }
    }
}

TEST_CASE("dft satisfies Parseval and contracts L2") {
    auto gen = oracle::rng(32);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 32;
        const auto va = oracle::random_values(gen, n);
        const auto vb = oracle::random_values(gen, n);
        const auto a = oracle::slice("a", va);
        const auto b = oracle::slice("b", vb);

        const auto fa = dft_transform(a, smf::Index(n));
        CHECK(fa.values().squaredNorm() == doctest::Approx(a.values().squaredNorm()).epsilon(1e-9));

        const double raw = l2(a, b);
        double prev = 0.0;
        for (smf::Index k : {4, 8, 16, 32}) {
            const double trunc = l2(dft_transform(a, k), dft_transform(b, k));
            CHECK(trunc <= raw + 1e-9);
            CHECK(trunc >= prev - 1e-9); // more coefficients, tighter bound
            prev = trunc;
        }
        const double full = l2(dft_transform(a, smf::Index(n)), dft_transform(b, smf::Index(n)));
        CHECK(full == doctest::Approx(raw).epsilon(1e-9));
    }
}

TEST_CASE("dft validates its inputs") {
    const auto s = oracle::slice("s", {1, 2, 3, 4});
    CHECK_THROWS_AS(dft_transform(s, 0), smf::PreconditionError);
    CHECK_THROWS_AS(dft_transform(s, 5), smf::PreconditionError);
    Eigen::MatrixXd values(2, 4);
    values.setZero();
    const SequenceSlice vec("v", values, smf::ComponentKind::vector(2));
    CHECK_THROWS_AS(dft_transform(vec, 2), smf::PreconditionError);
}

TEST_CASE("paa computes segment means") {
    const auto halves = paa_transform(oracle::slice("s", {1, 2, 3, 4}), 2);
    REQUIRE(halves.len() == 2);
    CHECK(halves.values()(0, 0) == doctest::Approx(1.5));
    CHECK(halves.values()(0, 1) == doctest::Approx(3.5));

    const auto thirds = paa_transform(oracle::slice("s", {0, 2, 4, 6, 8, 10}), 3);
    REQUIRE(thirds.len() == 3);
    CHECK(thirds.values()(0, 0) == doctest::Approx(1.0));
    CHECK(thirds.values()(0, 1) == doctest::Approx(5.0));
    CHECK(thirds.values()(0, 2) == doctest::Approx(9.0));

    const auto constant = paa_transform(oracle::slice("s", {7, 7, 7, 7, 7, 7}), 2);
    CHECK(constant.values()(0, 0) == doctest::Approx(7.0));
    CHECK(constant.values()(0, 1) == doctest::Approx(7.0));

    CHECK_THROWS_AS(paa_transform(oracle::slice("s", {1, 2, 3, 4, 5}), 2),
                    smf::PreconditionError);
}

TEST_CASE("paa lower-bounds L2 with the sqrt(n/m) factor") {
    auto gen = oracle::rng(33);
    const std::size_t n = 32;
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = oracle::slice("a", oracle::random_values(gen, n));
        const auto b = oracle::slice("b", oracle::random_values(gen, n));
        const double raw = l2(a, b);
        for (smf::Index m : {4, 8, 16, 32}) {
            const double scale = std::sqrt(double(n) / double(m));
            const double bound = scale * l2(paa_transform(a, m), paa_transform(b, m));
            CHECK(bound <= raw + 1e-9);
        }
    }
}

TEST_CASE("transforms preserve provenance") {
    const auto s = subsequence(SequenceSlice::scalars("root", {1, 2, 3, 4, 5, 6, 7, 8}), 2, 5);
    for (const auto& spec :
         {TransformSpec::identity(), TransformSpec::dft(2), TransformSpec::paa(2)}) {
        const auto out = spec.apply(s);
        CHECK(*out.pid() == "root");
        CHECK(out.offset() == 2);
        CHECK(out.len() == spec.output_len(s.len()));
    }
}

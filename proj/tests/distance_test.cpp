#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "smf/distance.hpp"

using oracle::slice;
using smf::DistanceSpec;
using smf::dtw;
using smf::edr;
using smf::erp;
using smf::lb_keogh;
using smf::lb_paa;
using smf::lcss;
using smf::lp_distance;
using smf::SequenceSlice;

namespace {

Eigen::VectorXd gap0() { return Eigen::VectorXd::Zero(1); }

} // namespace

TEST_CASE("lp distance basics") {
    CHECK(lp_distance(slice("a", {0, 0}), slice("b", {3, 4}), 2.0) == doctest::Approx(5.0));
    CHECK(lp_distance(slice("a", {1, 7, 2}), slice("b", {1, 7, 2}), 1.0) == 0.0);
    CHECK(lp_distance(slice("a", {1, 7, 2}), slice("b", {1, 7, 2}), 3.0) == 0.0);
    CHECK(lp_distance(slice("a", {1, 2, 3}), slice("b", {2, 2, 2}), 1.0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(lp_distance(slice("a", {1}), slice("b", {1, 2}), 2.0),
                    smf::PreconditionError);
    CHECK_THROWS_AS(lp_distance(slice("a", {1}), slice("b", {1}), 0.5), smf::PreconditionError);
}

TEST_CASE("lp distance over vector components") {
    Eigen::MatrixXd a(2, 2), b(2, 2);
    a << 0, 1, 0, 1;
    b << 3, 1, 4, 1;
    const SequenceSlice sa("a", a, smf::ComponentKind::vector(2));
    const SequenceSlice sb("b", b, smf::ComponentKind::vector(2));
    // component distances are 5 and 0
    CHECK(lp_distance(sa, sb, 1.0) == doctest::Approx(5.0));
    CHECK(lp_distance(sa, sb, 2.0) == doctest::Approx(5.0));
    CHECK_THROWS_AS(lp_distance(sa, slice("c", {1, 2}), 2.0), smf::PreconditionError);
}

TEST_CASE("dtw handles warping, bands, and degenerate cases") {
    CHECK(dtw(slice("a", {0}), slice("b", {0, 0, 0})) == 0.0);
    CHECK(dtw(slice("a", {1, 2, 3}), slice("b", {1, 2, 2, 3})) == doctest::Approx(0.0));
    CHECK(oracle::dtw({1, 2, 3}, {1, 2, 2, 3}) == doctest::Approx(0.0));

    // band 0 with equal lengths forces the diagonal
    const std::vector<double> va{1, 4, 2};
    const std::vector<double> vb{2, 2, 5};
    double diag = 0.0;
    for (int i = 0; i < 3; ++i) diag += (va[i] - vb[i]) * (va[i] - vb[i]);
    CHECK(dtw(slice("a", va), slice("b", vb), 0) == doctest::Approx(diag));

    CHECK_THROWS_AS(dtw(slice("a", {}), slice("b", {1})), smf::PreconditionError);
    CHECK_THROWS_AS(dtw(slice("a", {1}), slice("b", {1, 2, 3}), 1), smf::PreconditionError);
}

TEST_CASE("dtw properties: self-distance, diagonal bound, band monotonicity") {
    auto gen = oracle::rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        const auto va = oracle::random_values(gen, 20);
        const auto vb = oracle::random_values(gen, 20);
        const auto a = slice("a", va);
        const auto b = slice("b", vb);

        CHECK(dtw(a, a, 3) == 0.0);
        CHECK(dtw(a, a) == 0.0);

        const double l2 = lp_distance(a, b, 2.0);
        CHECK(dtw(a, b) <= l2 * l2 + 1e-9);

        double prev = std::numeric_limits<double>::infinity();
        for (smf::Index band : {0, 1, 2, 5, 10, 19}) {
            const double v = dtw(a, b, band);
            CHECK(v <= prev + 1e-12);
            prev = v;
        }
        CHECK(dtw(a, b) <= prev + 1e-12);
    }
}

TEST_CASE("lb_keogh envelope bound") {
    // band 0 collapses the envelope onto Q
    auto gen = oracle::rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        const auto q = slice("q", oracle::random_values(gen, 16));
        const auto s = slice("s", oracle::random_values(gen, 16));
        CHECK(lb_keogh(q, s, 0) == doctest::Approx(dtw(q, s, 0)).epsilon(1e-9));
    }

    // S inside the envelope everywhere
    CHECK(lb_keogh(slice("q", {0, 5, 0, 5}), slice("s", {1, 2, 3, 4}), 1) == 0.0);

    CHECK(lb_keogh(slice("q", {0, 0, 0}), slice("s", {0, 0, 2}), 1) == doctest::Approx(4.0));

    CHECK_THROWS_AS(lb_keogh(slice("q", {1}), slice("s", {1, 2}), 1), smf::PreconditionError);
}

TEST_CASE("lb_paa with one-point segments equals lb_keogh") {
    auto gen = oracle::rng(43);
    for (int trial = 0; trial < 50; ++trial) {
        const auto q = slice("q", oracle::random_values(gen, 12));
        const auto s = slice("s", oracle::random_values(gen, 12));
        CHECK(lb_paa(q, s, 2, 12) == doctest::Approx(lb_keogh(q, s, 2)).epsilon(1e-9));
    }
    CHECK_THROWS_AS(lb_paa(slice("q", {1, 2, 3}), slice("s", {1, 2, 3}), 1, 2),
                    smf::PreconditionError);
}

TEST_CASE("lower-bound chain lb_paa <= lb_keogh <= dtw") {
    auto gen = oracle::rng(44);
    for (int trial = 0; trial < 200; ++trial) {
        const auto q = slice("q", oracle::random_walk(gen, 32));
        const auto s = slice("s", oracle::random_walk(gen, 32));
        for (smf::Index band : {2, 5, 10}) {
            const double full = dtw(q, s, band);
            const double keogh = lb_keogh(q, s, band);
            CHECK(keogh <= full + 1e-9);
            for (smf::Index m : {4, 8, 16}) {
                const double paa = lb_paa(q, s, band, m);
                CHECK(paa <= keogh + 1e-9);
            }
        }
    }
}

TEST_CASE("erp base cases and oracle examples") {
    CHECK(erp(slice("a", {}), slice("b", {1, 2}), gap0()) == doctest::Approx(3.0));
    CHECK(erp(slice("a", {1, 7, 2}), slice("b", {1, 7, 2}), gap0()) == 0.0);
    CHECK(erp(slice("a", {1, 3}), slice("b", {1}), gap0()) == doctest::Approx(3.0));
    CHECK(oracle::erp({1, 3}, {1}, 0.0) == doctest::Approx(3.0));
    CHECK(erp(slice("a", {}), slice("b", {}), gap0()) == 0.0);
    CHECK_THROWS_AS(erp(slice("a", {1}), slice("b", {1}), Eigen::VectorXd::Zero(2)),
                    smf::PreconditionError);
}

TEST_CASE("erp is symmetric and satisfies the triangle inequality on samples") {
    auto gen = oracle::rng(45);
    std::uniform_int_distribution<int> len_dist(0, 10);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto va = oracle::random_values(gen, std::size_t(len_dist(gen)), -2, 2);
        const auto vb = oracle::random_values(gen, std::size_t(len_dist(gen)), -2, 2);
        const auto vc = oracle::random_values(gen, std::size_t(len_dist(gen)), -2, 2);
        const auto a = slice("a", va);
        const auto b = slice("b", vb);
        const auto c = slice("c", vc);
        const double ab = erp(a, b, gap0());
        const double ba = erp(b, a, gap0());
        CHECK(ab == doctest::Approx(ba).epsilon(1e-12));
        CHECK(erp(a, c, gap0()) <= ab + erp(b, c, gap0()) + 1e-9);
    }
}

TEST_CASE("edr thresholded edit count") {
    CHECK(edr(slice("a", {1}), slice("b", {1.05}), 0.1) == 0.0);
    CHECK(edr(slice("a", {}), slice("b", {4, 5, 6}), 0.1) == 3.0);
    CHECK(edr(slice("a", {1, 5, 9}), slice("b", {1, 9}), 0.5) == doctest::Approx(1.0));
    CHECK(oracle::edr({1, 5, 9}, {1, 9}, 0.5) == doctest::Approx(1.0));

    // integer-valued and swap-invariant
    auto gen = oracle::rng(46);
    for (int trial = 0; trial < 200; ++trial) {
        const auto va = oracle::random_values(gen, 7);
        const auto vb = oracle::random_values(gen, 5);
        const double d = edr(slice("a", va), slice("b", vb), 0.3);
        CHECK(d == doctest::Approx(std::round(d)));
        CHECK(d == edr(slice("b", vb), slice("a", va), 0.3));
    }
}

TEST_CASE("lcss normalized distance") {
    const auto s = slice("s", {1, 2, 3, 4});
    CHECK(lcss(s, s, 0.0, 0) == 0.0);
    CHECK(lcss(s, s, 0.5) == 0.0);
    CHECK(lcss(slice("a", {0, 0}), slice("b", {10, 10}), 0.5) == doctest::Approx(1.0));
    CHECK(lcss(s, slice("t", {2, 3}), 0.1, 3) == doctest::Approx(0.0));
    CHECK(oracle::lcss({1, 2, 3, 4}, {2, 3}, 0.1, 3) == doctest::Approx(0.0));
    CHECK_THROWS_AS(lcss(slice("a", {}), s, 0.1), smf::PreconditionError);

    auto gen = oracle::rng(47);
    for (int trial = 0; trial < 200; ++trial) {
        const auto va = oracle::random_values(gen, 6);
        const auto vb = oracle::random_values(gen, 9);
        const double d = lcss(slice("a", va), slice("b", vb), 0.4, 2);
        CHECK(d == lcss(slice("b", vb), slice("a", va), 0.4, 2));
        CHECK(d >= 0.0);
        CHECK(d <= 1.0);
    }
}

TEST_CASE("dp distances match the memoized recursion oracles exhaustively") {
    std::vector<std::vector<double>> pool;
    for (std::size_t len = 1; len <= 4; ++len)
        for (auto& seq : oracle::enumerate_sequences(len, 3)) pool.push_back(std::move(seq));

    for (const auto& va : pool) {
        for (const auto& vb : pool) {
            const auto a = slice("a", va);
            const auto b = slice("b", vb);
            CHECK(dtw(a, b) == doctest::Approx(oracle::dtw(va, vb)).epsilon(1e-12));
            if (std::abs(smf::Index(va.size()) - smf::Index(vb.size())) <= 1)
                CHECK(dtw(a, b, 1) == doctest::Approx(oracle::dtw(va, vb, 1)).epsilon(1e-12));
            CHECK(erp(a, b, gap0()) == doctest::Approx(oracle::erp(va, vb, 0.0)).epsilon(1e-12));
            CHECK(edr(a, b, 0.5) == oracle::edr(va, vb, 0.5));
            CHECK(lcss(a, b, 0.5) == doctest::Approx(oracle::lcss(va, vb, 0.5)).epsilon(1e-12));
            CHECK(lcss(a, b, 0.5, 1) ==
                  doctest::Approx(oracle::lcss(va, vb, 0.5, 1)).epsilon(1e-12));
        }
    }
}

TEST_CASE("dp distances match the oracles on random longer sequences") {
    auto gen = oracle::rng(48);
    std::uniform_int_distribution<int> len_dist(5, 8);
    std::uniform_int_distribution<int> digit(0, 2);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<double> va(std::size_t(len_dist(gen)));
        std::vector<double> vb(std::size_t(len_dist(gen)));
        for (double& v : va) v = digit(gen);
        for (double& v : vb) v = digit(gen);
        const auto a = slice("a", va);
        const auto b = slice("b", vb);
        CHECK(dtw(a, b) == doctest::Approx(oracle::dtw(va, vb)).epsilon(1e-12));
        CHECK(erp(a, b, gap0()) == doctest::Approx(oracle::erp(va, vb, 0.0)).epsilon(1e-12));
        CHECK(edr(a, b, 0.5) == oracle::edr(va, vb, 0.5));
        CHECK(lcss(a, b, 0.5) == doctest::Approx(oracle::lcss(va, vb, 0.5)).epsilon(1e-12));
    }
}

TEST_CASE("evaluate dispatches on the spec and reports metric measures") {
    const auto a = slice("a", {1, 2, 3, 4});
    const auto b = slice("b", {2, 2, 2, 2});
    CHECK(smf::evaluate(DistanceSpec::l2(), a, b) == doctest::Approx(lp_distance(a, b, 2.0)));
    CHECK(smf::evaluate(DistanceSpec::dtw(1), a, b) == doctest::Approx(dtw(a, b, 1)));
    CHECK(smf::evaluate(DistanceSpec::lb_keogh(1), a, b) == doctest::Approx(lb_keogh(a, b, 1)));
    CHECK(smf::evaluate(DistanceSpec::lb_paa(1, 2), a, b) == doctest::Approx(lb_paa(a, b, 1, 2)));
    CHECK(smf::evaluate(DistanceSpec::erp(0.0), a, b) == doctest::Approx(erp(a, b, gap0())));
    CHECK(smf::evaluate(DistanceSpec::edr(0.5), a, b) == doctest::Approx(edr(a, b, 0.5)));
    CHECK(smf::evaluate(DistanceSpec::lcss(0.5, 2), a, b) == doctest::Approx(lcss(a, b, 0.5, 2)));

    CHECK(smf::is_metric(DistanceSpec::l2()));
    CHECK(smf::is_metric(DistanceSpec::lp(1.0)));
    CHECK(smf::is_metric(DistanceSpec::erp(0.0)));
    CHECK_FALSE(smf::is_metric(DistanceSpec::dtw()));
    CHECK_FALSE(smf::is_metric(DistanceSpec::edr(0.1)));
    CHECK_FALSE(smf::is_metric(DistanceSpec::lcss(0.1)));
    CHECK_FALSE(smf::is_metric(DistanceSpec::lb_keogh(1)));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "smf/slicer.hpp"

using smf::disjoint_slice;
using smf::SequenceSlice;
using smf::sliding_slice;
using smf::WindowConfig;
using smf::WindowView;

TEST_CASE("sliding windows cover every offset") {
    const auto s = SequenceSlice::scalars("s", {1, 2, 3, 4, 5});
    const auto windows = sliding_slice(s, 3);
    REQUIRE(windows.size() == 3);
    for (std::size_t k = 0; k < windows.size(); ++k) {
        CHECK(windows[k].offset() == smf::Index(k));
        CHECK(windows[k].len() == 3);
        CHECK(*windows[k].pid() == "s");
    }

    CHECK(sliding_slice(SequenceSlice::scalars("s", {1, 2, 3}), 3).size() == 1);

    const auto pairs = sliding_slice(SequenceSlice::scalars("p", {1, 2, 3, 4}), 2);
    REQUIRE(pairs.size() == 3);
    CHECK(pairs[0].values()(0, 0) == 1);
    CHECK(pairs[0].values()(0, 1) == 2);
    CHECK(pairs[1].values()(0, 0) == 2);
    CHECK(pairs[1].values()(0, 1) == 3);
    CHECK(pairs[2].values()(0, 0) == 3);
    CHECK(pairs[2].values()(0, 1) == 4);
}

TEST_CASE("disjoint windows drop the incomplete tail") {
    const auto seven = disjoint_slice(SequenceSlice::scalars("s", {0, 1, 2, 3, 4, 5, 6}), 3);
    REQUIRE(seven.size() == 2);
    CHECK(seven[0].offset() == 0);
    CHECK(seven[1].offset() == 3);

    const auto s6 = SequenceSlice::scalars("s", {9, 8, 7, 6, 5, 4});
    const auto six = disjoint_slice(s6, 3);
    REQUIRE(six.size() == 2);
    Eigen::MatrixXd recombined(1, 6);
    recombined << six[0].values(), six[1].values();
    CHECK(recombined == s6.values());

    const auto odd = disjoint_slice(SequenceSlice::scalars("s", {9, 8, 7, 6, 5}), 2);
    REQUIRE(odd.size() == 2);
    CHECK(odd[0].values()(0, 0) == 9);
    CHECK(odd[0].values()(0, 1) == 8);
    CHECK(odd[1].values()(0, 0) == 7);
    CHECK(odd[1].values()(0, 1) == 6);
}

TEST_CASE("too-short sequences are rejected") {
    const auto s = SequenceSlice::scalars("s", {1, 2});
    CHECK_THROWS_AS(sliding_slice(s, 3), smf::PreconditionError);
    CHECK_THROWS_AS(disjoint_slice(s, 3), smf::PreconditionError);
    CHECK_THROWS_AS(WindowConfig(0, smf::SlicerKind::Sliding), smf::PreconditionError);
}

TEST_CASE("window counts and contents over random lengths") {
    auto gen = oracle::rng(21);
    std::uniform_int_distribution<int> len_dist(1, 64);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = len_dist(gen);
        std::uniform_int_distribution<int> w_dist(1, n);
        const int w = w_dist(gen);
        const auto s = SequenceSlice::scalars("s", oracle::random_values(gen, std::size_t(n)));

        const auto sliding = sliding_slice(s, w);
        const auto disjoint = disjoint_slice(s, w);
        CHECK(smf::Index(sliding.size()) == s.len() - w + 1);
        CHECK(smf::Index(disjoint.size()) == s.len() / w);

        for (const auto& win : sliding) {
            CHECK(win.len() == w);
            const auto direct = subsequence(s, win.offset(), win.offset() + w - 1);
            CHECK(win.values() == direct.values());
        }
        // every disjoint window appears among the sliding windows at the same offset
        for (const auto& win : disjoint) {
            CHECK(win.len() == w);
            CHECK(win.values() == sliding[std::size_t(win.offset())].values());
        }

        // concatenating disjoint windows plus the dropped tail reconstructs S
        Eigen::MatrixXd recombined(1, s.len());
        smf::Index at = 0;
        for (const auto& win : disjoint) {
            recombined.middleCols(at, w) = win.values();
            at += w;
        }
        const smf::Index tail = s.len() % w;
        if (tail > 0) recombined.middleCols(at, tail) = s.values().rightCols(tail);
        CHECK(recombined == s.values());
    }
}

TEST_CASE("window views are lazy and indexable") {
    auto gen = oracle::rng(3);
    const auto s = SequenceSlice::scalars("s", oracle::random_values(gen, 1000));
    WindowView view(s, WindowConfig(16, smf::SlicerKind::Sliding));
    CHECK(view.size() == 985);
    CHECK(view.stride() == 1);
    CHECK(view[10].offset() == 10);
    CHECK_THROWS_AS(view[985], smf::PreconditionError);

    WindowView dview(s, WindowConfig(16, smf::SlicerKind::Disjoint));
    CHECK(dview.size() == 62);
    CHECK(dview.stride() == 16);
    CHECK(dview.dropped_tail() == 1000 - 62 * 16);
    CHECK(view.dropped_tail() == 0);

    // iteration materializes windows one at a time
    smf::Index count = 0;
    for (const auto& win : dview) {
        CHECK(win.offset() == count * 16);
        ++count;
    }
    CHECK(count == dview.size());
}

TEST_CASE("windows of a slice stay rooted at the original sequence") {
    auto gen = oracle::rng(4);
    const auto s = SequenceSlice::scalars("root", oracle::random_values(gen, 30));
    const auto part = subsequence(s, 10, 24);
    const auto windows = sliding_slice(part, 5);
    REQUIRE(windows.size() == 11);
    CHECK(*windows[0].pid() == "root");
    CHECK(windows[0].offset() == 10);
    CHECK(windows[0].values() == subsequence(s, 10, 14).values());
}

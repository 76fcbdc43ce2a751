#include <doctest.h>

#include <thread>

#include "helpers.hpp"

using namespace nqd;
using nqd::test::q;

TEST_CASE("partial sums of the named families") {
    Weights geo(SequenceSpec::geometric(q(3), q(1)));
    auto sums = geo.partial_sums(3);
    REQUIRE(sums.size() == 4);
    CHECK(sums[0] == q(1));
    CHECK(sums[1] == q(4));
    CHECK(sums[2] == q(13));
    CHECK(sums[3] == q(40));

    Weights ones(SequenceSpec::constant(q(1)));
    auto s2 = ones.partial_sums(4);
    for (Index n = 0; n <= 4; ++n) CHECK(s2[static_cast<size_t>(n)] == q(n + 1));
}

TEST_CASE("nonpositive weights are rejected") {
    Weights bad(SequenceSpec::explicit_terms({q(1), q(-1)}, SequenceSpec::Tail::repeat_last));
    CHECK_THROWS_AS(bad.partial_sums(1), ValidationError);
    CHECK(bad.q(0) == q(1)); // the prefix before the violation is fine
    Weights zero(SequenceSpec::constant(q(0)));
    CHECK_THROWS_AS(zero.Q(0), ValidationError);
}

TEST_CASE("sum increments equal the weights exactly") {
    nqd::test::Rng rng(5);
    for (const auto& w : nqd::test::weight_families()) {
        for (int i = 0; i < 20; ++i) {
            Index n = rng.pick(0, 80);
            CHECK(w->Q(n + 1) - w->Q(n) == w->q(n + 1));
        }
        CHECK(w->Q(0) == w->q(0));
    }
}

TEST_CASE("derived factors") {
    WeightsPtr w = Weights::make(SequenceSpec::geometric(q(3), q(1)));
    CHECK(w->diag_ratio(1) == q(4, 3));
    CHECK(w->offdiag_factor(0) == q(-2, 3)); // 1 * (1/3 - 1)
    WeightsPtr ones = Weights::make(SequenceSpec::constant(q(1)));
    CHECK(ones->offdiag_factor(5) == q(0));
    CHECK(ones->diag_ratio(3) == q(4));
}

TEST_CASE("concurrent reads after ensure are consistent") {
    WeightsPtr w = Weights::make(SequenceSpec::power(1, Mode::exact));
    w->ensure(500);
    std::vector<std::thread> threads;
    std::vector<bool> ok(4, false);
    for (int t = 0; t < 4; ++t)
        threads.emplace_back([&, t] {
            bool good = true;
            for (Index n = 0; n < 500; ++n)
                good = good && (w->Q(n + 1) - w->Q(n) == w->q(n + 1));
            ok[static_cast<size_t>(t)] = good;
        });
    for (auto& th : threads) th.join();
    for (bool g : ok) CHECK(g);
}

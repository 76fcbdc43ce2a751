#include <doctest.h>

#include "helpers.hpp"

using namespace nqd;
using nqd::test::q;

TEST_CASE("named sequence kinds evaluate per their rules") {
    CHECK(eval_sequence(SequenceSpec::unit(1, Mode::exact), 1) == q(1));
    CHECK(eval_sequence(SequenceSpec::unit(1, Mode::exact), 0) == q(0));
    CHECK(eval_sequence(SequenceSpec::geometric(q(3), q(1)), 4) == q(81));
    CHECK(eval_sequence(nqd::test::explicit_seq({q(5), q(7)}), 2) == q(0));
    CHECK(eval_sequence(SequenceSpec::constant(q(9, 2)), 123) == q(9, 2));
    CHECK(eval_sequence(SequenceSpec::power(2, Mode::exact), 3) == q(16));
    CHECK(eval_sequence(SequenceSpec::power(-1, Mode::exact), 3) == q(1, 4));
}

TEST_CASE("explicit tails") {
    auto rep = SequenceSpec::explicit_terms({q(5), q(7)}, SequenceSpec::Tail::repeat_last);
    CHECK(rep.at(1) == q(7));
    CHECK(rep.at(100) == q(7));
    CHECK_THROWS_AS(SequenceSpec::explicit_terms({}, SequenceSpec::Tail::repeat_last),
                    ValidationError);
    auto empty_zeros = SequenceSpec::explicit_terms({}, SequenceSpec::Tail::zeros);
    CHECK(empty_zeros.at(0) == q(0));
}

TEST_CASE("unit sequence is a Kronecker delta") {
    nqd::test::Rng rng(23);
    for (int i = 0; i < 50; ++i) {
        Index j = rng.pick(0, 40);
        Index k = rng.pick(0, 40);
        auto u = SequenceSpec::unit(j, Mode::exact);
        CHECK(u.at(k) == (j == k ? q(1) : q(0)));
    }
}

TEST_CASE("evaluation is pure and bit-for-bit repeatable") {
    auto s = SequenceSpec::geometric(q(-2, 3), q(5, 7));
    for (Index k : {0, 1, 5, 17, 60}) {
        Scalar a = s.at(k), b = s.at(k);
        CHECK(a == b);
        CHECK(a.str() == b.str());
    }
}

TEST_CASE("negative indices are rejected") {
    CHECK_THROWS_AS(SequenceSpec::constant(q(1)).at(-1), ValidationError);
    CHECK_THROWS_AS(SequenceSpec::unit(-2, Mode::exact), ValidationError);
}

#include <doctest.h>

#include "helpers.hpp"

using namespace nqd;
using nqd::test::q;

TEST_CASE("pairing matrix entries, both variants") {
    WeightsPtr ones = Weights::make(SequenceSpec::constant(q(1)));
    PairingMatrix derived(ones, SequenceSpec::unit(0, Mode::exact), PairingVariant::derived);
    for (Index n = 0; n <= 6; ++n) {
        CHECK(derived.at(n, 0) == q(-1));
        for (Index k = 1; k <= n; ++k) CHECK(derived.at(n, k) == q(0));
    }

    WeightsPtr geo = Weights::make(SequenceSpec::geometric(q(3), q(1)));
    PairingMatrix printed(geo, SequenceSpec::unit(1, Mode::exact), PairingVariant::printed);
    CHECK(printed.at(0, 0) == q(0));
    for (Index n = 1; n <= 5; ++n) CHECK(printed.at(n, 0) == q(-2, 3));

    PairingMatrix of_zero(ones, SequenceSpec::zero(Mode::exact), PairingVariant::derived);
    for (Index n = 0; n <= 5; ++n)
        for (Index k = 0; k <= n; ++k) CHECK(of_zero.at(n, k) == q(0));
}

TEST_CASE("pairing identity examples") {
    WeightsPtr ones = Weights::make(SequenceSpec::constant(q(1)));
    auto zero = SequenceSpec::zero(Mode::exact);
    auto e0 = SequenceSpec::unit(0, Mode::exact);
    CHECK(pairing_check(ones, zero, e0, 12) == q(0));
    CHECK(pairing_check(ones, e0, e0, 12) == q(0));
}

TEST_CASE("pairing identity holds exactly for the derived variant") {
    nqd::test::Rng rng(53);
    for (const auto& w : nqd::test::weight_families()) {
        for (int rep = 0; rep < 25; ++rep) {
            auto a = nqd::test::explicit_seq(rng.sparse_terms(8));
            auto y = nqd::test::explicit_seq(rng.sparse_terms(8));
            CHECK(pairing_check(w, a, y, 16) == q(0));
        }
    }
}

TEST_CASE("printed variant generally breaks the pairing identity") {
    WeightsPtr geo = Weights::make(SequenceSpec::geometric(q(3), q(1)));
    auto a = SequenceSpec::unit(0, Mode::exact);
    auto y = SequenceSpec::unit(0, Mode::exact);
    // a_0 x_0 with x = inverse(y): first partial sums differ once the
    // diagonal correction is dropped
    CHECK(pairing_check(geo, a, y, 8, PairingVariant::printed) != q(0));
}

TEST_CASE("dual norm examples") {
    TruncationPolicy p = nqd::test::exact_policy();
    WeightsPtr ones = Weights::make(SequenceSpec::constant(q(1)));

    for (PairingVariant v : {PairingVariant::derived, PairingVariant::printed}) {
        DualNorm zero = dual_norm(ones, SequenceSpec::zero(Mode::exact), p, v);
        CHECK(zero.value == q(0));
        CHECK(zero.verdict.holds());

        DualNorm e1 = dual_norm(ones, SequenceSpec::unit(1, Mode::exact), p, v);
        CHECK(e1.value == q(2));
        CHECK(*e1.attained == 1);
        CHECK(e1.verdict.holds());

        DualNorm e0 = dual_norm(ones, SequenceSpec::unit(0, Mode::exact), p, v);
        CHECK(e0.value == q(1));
        CHECK(e0.verdict.holds());
    }
}

TEST_CASE("per-truncation dual-norm values match sign-vector enumeration") {
    // oracle: max over sign vectors y of |sum_{k<=n} a_k x(y)_k|, x = inverse applied to y
    nqd::test::Rng rng(59);
    for (const auto& w : nqd::test::weight_families()) {
        for (int rep = 0; rep < 3; ++rep) {
            std::vector<Scalar> a_terms = rng.sparse_terms(5);
            auto a = nqd::test::explicit_seq(a_terms);
            PairingMatrix pm(w, a, PairingVariant::derived);
            for (Index n = 0; n <= 7; ++n) {
                Scalar best = q(0);
                for (size_t mask = 0; mask < (size_t{1} << (n + 1)); ++mask) {
                    std::vector<Scalar> y;
                    for (Index j = 0; j <= n; ++j)
                        y.push_back(mask & (size_t{1} << j) ? q(1) : q(-1));
                    auto x = nqd::test::inverse_applied(w, y);
                    Scalar acc = q(0);
                    for (Index k = 0; k <= n; ++k) acc += a.at(k) * x[static_cast<size_t>(k)];
                    if (best < acc.abs()) best = acc.abs();
                }
                CHECK(pm.row_abs_sum(n) == best);
            }
        }
    }
}

TEST_CASE("dual norm is absolutely homogeneous on stabilized verdicts") {
    nqd::test::Rng rng(61);
    TruncationPolicy p = nqd::test::exact_policy();
    WeightsPtr w = Weights::make(SequenceSpec::geometric(q(2), q(1)));
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<Scalar> terms = rng.sparse_terms(6);
        Scalar alpha = rng.nonzero_rational();
        std::vector<Scalar> scaled;
        for (const auto& t : terms) scaled.push_back(alpha * t);
        DualNorm base = dual_norm(w, nqd::test::explicit_seq(terms), p);
        DualNorm sc = dual_norm(w, nqd::test::explicit_seq(scaled), p);
        REQUIRE(base.verdict.holds());
        REQUIRE(sc.verdict.holds());
        CHECK(sc.value == alpha.abs() * base.value);
    }
}

TEST_CASE("beta dual membership") {
    TruncationPolicy p = nqd::test::exact_policy();
    WeightsPtr ones = Weights::make(SequenceSpec::constant(q(1)));

    for (BaseSpace base : {BaseSpace::c0, BaseSpace::c, BaseSpace::linf}) {
        auto r = beta_dual_membership(ones, SequenceSpec::zero(Mode::exact), {base, true}, p);
        CHECK(r.combined == Outcome::holds);
    }

    auto r = beta_dual_membership(ones, SequenceSpec::unit(0, Mode::exact),
                                  {BaseSpace::c0, true}, p);
    CHECK(r.combined == Outcome::holds);
    REQUIRE(!r.sets.empty());
    CHECK(r.sets[0].name == "row-l1-sup");
    CHECK(*r.sets[0].verdict.estimate == q(1));

    // all-ones coefficients: the row l1 mass grows like the diagonal ratio
    TruncationPolicy tight = nqd::test::exact_policy();
    tight.divergence_threshold = q(1000);
    auto fail = beta_dual_membership(ones, SequenceSpec::constant(q(1)),
                                     {BaseSpace::c0, true}, tight);
    CHECK(fail.combined == Outcome::fails);

    CHECK_THROWS_AS(beta_dual_membership(ones, SequenceSpec::zero(Mode::exact),
                                         {BaseSpace::c0, false}, p),
                    UnsupportedClassError);
}

TEST_CASE("beta dual of the convergent domain needs the row-sum limit") {
    TruncationPolicy p = nqd::test::exact_policy();
    WeightsPtr ones = Weights::make(SequenceSpec::constant(q(1)));
    auto r = beta_dual_membership(ones, SequenceSpec::unit(2, Mode::exact), {BaseSpace::c, true}, p);
    CHECK(r.sets.size() == 3);
    CHECK(r.combined == Outcome::holds);
}

TEST_CASE("finite subset sup") {
    auto row_of = [](std::vector<Scalar> terms) {
        return RowFunctional::from_sequence(nqd::test::explicit_seq(std::move(terms)));
    };
    CHECK(finite_subset_sup(row_of({q(1), q(-2), q(3)}), 3) == q(4));
    CHECK(finite_subset_sup(row_of({q(0), q(0)}), 2) == q(0));
    CHECK(finite_subset_sup(row_of({q(-1), q(-1)}), 2) == q(2));
}

TEST_CASE("finite subset sup equals brute force") {
    nqd::test::Rng rng(67);
    for (int rep = 0; rep < 30; ++rep) {
        Index n = rng.pick(0, 12);
        std::vector<Scalar> terms;
        for (Index i = 0; i < n; ++i) terms.push_back(rng.rational());
        auto row = RowFunctional::from_sequence(nqd::test::explicit_seq(terms));
        CHECK(finite_subset_sup(row, n) == nqd::test::brute_subset_sup(terms));
    }
}

TEST_CASE("bounded-domain beta dual fails when the l1 mass escapes the column limits") {
    // a_k = 1/(k+1) against constant weights: every column limit is -1, but the
    // row l1 mass grows like n and never matches their finite l1 sum
    TruncationPolicy tight = nqd::test::exact_policy();
    tight.divergence_threshold = q(1000);
    WeightsPtr ones = Weights::make(SequenceSpec::constant(q(1)));
    auto r = beta_dual_membership(ones, SequenceSpec::power(-1, Mode::exact),
                                  {BaseSpace::linf, true}, tight);
    CHECK(r.combined == Outcome::fails);
    bool saw_interchange_fail = false;
    for (const auto& s : r.sets)
        if (s.name == "l1-limit-interchange" && s.verdict.fails()) saw_interchange_fail = true;
    CHECK(saw_interchange_fail);
    CHECK(r.column_limits[0] == q(-1));
    CHECK(r.column_limits[3] == q(-1));
}

TEST_CASE("dual norm: parallel kernel equals the serial reference") {
    TruncationPolicy p = nqd::test::exact_policy(512);
    WeightsPtr w = Weights::make(SequenceSpec::power(1, Mode::exact));
    auto a = SequenceSpec::explicit_terms({q(1), q(-1, 2), q(1, 4), q(2)},
                                          SequenceSpec::Tail::repeat_last);
    DualNorm serial = dual_norm(w, a, p, PairingVariant::derived, Exec::serial);
    DualNorm parallel = dual_norm(w, a, p, PairingVariant::derived, Exec::parallel);
    CHECK(serial.value == parallel.value);
    CHECK(serial.attained == parallel.attained);
    CHECK(serial.verdict.outcome == parallel.verdict.outcome);
}

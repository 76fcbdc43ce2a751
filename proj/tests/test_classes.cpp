#include <doctest.h>

#include "helpers.hpp"

using namespace nqd;
using nqd::test::q;

namespace {

RowMatrix mean_difference_matrix(const WeightsPtr& w, Mode m = Mode::exact) {
    return RowMatrix::from_triangle(compose(riesz_mean(w), backward_difference(m)));
}

} // namespace

TEST_CASE("bound sup examples") {
    TruncationPolicy p = nqd::test::exact_policy();
    WeightsPtr ones = Weights::make(SequenceSpec::constant(q(1)));

    auto [zero_est, zero_v] = matrix_bound_sup(ones, RowMatrix::zero(Mode::exact), p);
    CHECK(zero_est == q(0));
    CHECK(zero_v.holds());

    // identity matrix under constant weights: the diagonal term is n+1
    TruncationPolicy tight = nqd::test::exact_policy();
    tight.divergence_threshold = q(100);
    RowMatrix id = RowMatrix::from_triangle(identity_triangle(Mode::exact));
    auto [id_est, id_v] = matrix_bound_sup(ones, id, tight);
    CHECK(id_v.fails());
    CHECK(q(100) < id_est);

    WeightsPtr geo = Weights::make(SequenceSpec::geometric(q(3), q(1)));
    auto [uc_est, uc_v] = matrix_bound_sup(geo, RowMatrix::unit_column(1, Mode::exact), p);
    CHECK(uc_est == q(2));
    CHECK(uc_v.holds());
}

TEST_CASE("bound sup values match direct summation") {
    // oracle: literal double loop over rows and truncations, fresh inner sums
    WeightsPtr geo = Weights::make(SequenceSpec::geometric(q(3), q(1)));
    RowMatrix uc = RowMatrix::unit_column(1, Mode::exact);
    Scalar direct = q(0);
    for (Index n = 0; n <= 24; ++n)
        for (Index m = 0; m <= 24; ++m) {
            Scalar val = q(0);
            for (Index j = 0; j < m; ++j) {
                Scalar sum = q(0);
                for (Index i = j + 1; i <= m; ++i) sum += uc.at(n, i);
                val += geo->Q(j) * ((q(1) / geo->q(j + 1) - q(1) / geo->q(j)) * sum).abs();
            }
            val += (geo->Q(m) * uc.at(n, m) / geo->q(m)).abs();
            if (direct < val) direct = val;
        }
    auto [est, v] = matrix_bound_sup(geo, uc, nqd::test::full_depth_policy(24));
    CHECK(est == direct);
    CHECK(est == q(2));
}

TEST_CASE("row tails") {
    TruncationPolicy p = nqd::test::exact_policy();
    WeightsPtr ones = Weights::make(SequenceSpec::constant(q(1)));

    CHECK(row_tail(*ones, RowMatrix::zero(Mode::exact), 3, BaseSpace::c0, p).holds());
    CHECK(row_tail(*ones, RowMatrix::unit_column(1, Mode::exact), 0, BaseSpace::c0, p).holds());

    // row rule a_{nk} = q_k / Q_k: the tail sequence is all ones
    RowMatrix flat("flat", Mode::exact,
                   [ones](Index, Index k) { return ones->q(k) / ones->Q(k); },
                   [](Index) { return std::optional<Index>(); });
    CHECK(row_tail(*ones, flat, 0, BaseSpace::c0, p).fails());
    CHECK(row_tail(*ones, flat, 0, BaseSpace::c, p).holds());
    CHECK_THROWS_AS(row_tail(*ones, flat, 0, BaseSpace::linf, p), ValidationError);
}

TEST_CASE("column limits") {
    TruncationPolicy p = nqd::test::exact_policy();
    RowMatrix id = RowMatrix::from_triangle(identity_triangle(Mode::exact));
    ColumnLimits cl = column_limits(id, LimitKind::zero, p);
    CHECK(cl.verdict.holds());
    for (const auto& v : cl.values) CHECK(v == q(0));

    RowMatrix uc = RowMatrix::unit_column(1, Mode::exact);
    cl = column_limits(uc, LimitKind::zero, p);
    CHECK(cl.verdict.fails());
    cl = column_limits(uc, LimitKind::exists, p);
    CHECK(cl.verdict.holds());
    CHECK(cl.values[1] == q(1));
    CHECK(cl.values[0] == q(0));

    cl = column_limits(RowMatrix::zero(Mode::exact), LimitKind::zero, p);
    CHECK(cl.verdict.holds());
}

TEST_CASE("row sum limits") {
    TruncationPolicy p = nqd::test::exact_policy();
    RowMatrix uc = RowMatrix::unit_column(1, Mode::exact);
    auto [est, v] = row_sum_limit(uc, LimitKind::exists, p);
    CHECK(v.holds());
    CHECK(est == q(1));
    CHECK(row_sum_limit(uc, LimitKind::zero, p).second.fails());

    CHECK(row_sum_limit(RowMatrix::zero(Mode::exact), LimitKind::zero, p).second.holds());

    WeightsPtr w = Weights::make(SequenceSpec::power(1, Mode::exact));
    RowMatrix riesz = RowMatrix::from_triangle(riesz_mean(w));
    auto [rest, rv] = row_sum_limit(riesz, LimitKind::exists, p);
    CHECK(rv.holds());
    CHECK(rest == q(1));
}

TEST_CASE("class membership across the seven pairs") {
    TruncationPolicy p = nqd::test::exact_policy();
    WeightsPtr ones = Weights::make(SequenceSpec::constant(q(1)));
    RowMatrix zero = RowMatrix::zero(Mode::exact);

    const std::vector<std::pair<BaseSpace, BaseSpace>> pairs = {
        {BaseSpace::linf, BaseSpace::linf}, {BaseSpace::c, BaseSpace::linf},
        {BaseSpace::c0, BaseSpace::linf},   {BaseSpace::c0, BaseSpace::c0},
        {BaseSpace::c0, BaseSpace::c},      {BaseSpace::c, BaseSpace::c0},
        {BaseSpace::c, BaseSpace::c},
    };
    for (auto [X, Y] : pairs) {
        ConditionReport r = class_membership({zero, {X, true}, Y, ones, p});
        CHECK(r.combined == Outcome::holds);
    }

    // the mean-difference matrix maps the null domain to null sequences
    RowMatrix md = mean_difference_matrix(ones);
    ConditionReport r = class_membership({md, {BaseSpace::c0, true}, BaseSpace::c0, ones, p});
    CHECK(r.combined == Outcome::holds);

    // the worked pair: unit column against geometric ratio-3 weights
    WeightsPtr geo = Weights::make(SequenceSpec::geometric(q(3), q(1)));
    r = class_membership(
        {RowMatrix::unit_column(1, Mode::exact), {BaseSpace::linf, true}, BaseSpace::linf, geo, p});
    CHECK(r.combined == Outcome::holds);

    CHECK_THROWS_AS(
        class_membership({zero, {BaseSpace::linf, true}, BaseSpace::c0, ones, p}),
        UnsupportedClassError);
    CHECK_THROWS_AS(class_membership({zero, {BaseSpace::c0, false}, BaseSpace::c0, ones, p}),
                    UnsupportedClassError);
}

TEST_CASE("membership is monotone in the codomain on stabilized verdicts") {
    TruncationPolicy p = nqd::test::exact_policy();
    WeightsPtr ones = Weights::make(SequenceSpec::constant(q(1)));
    RowMatrix md = mean_difference_matrix(ones);
    auto holds_for = [&](BaseSpace Y) {
        return class_membership({md, {BaseSpace::c0, true}, Y, ones, p}).combined ==
               Outcome::holds;
    };
    CHECK(holds_for(BaseSpace::c0));
    CHECK(holds_for(BaseSpace::c));
    CHECK(holds_for(BaseSpace::linf));
}

TEST_CASE("operator norm examples") {
    TruncationPolicy p = nqd::test::exact_policy();
    WeightsPtr ones = Weights::make(SequenceSpec::constant(q(1)));

    auto [zero_est, zero_v] = operator_norm(ones, RowMatrix::zero(Mode::exact), p);
    CHECK(zero_est == q(0));
    CHECK(zero_v.holds());

    auto [md_est, md_v] = operator_norm(ones, mean_difference_matrix(ones), p);
    CHECK(md_est == q(1));
    CHECK(md_v.holds());

    auto [uc_est, uc_v] = operator_norm(ones, RowMatrix::unit_column(1, Mode::exact), p);
    CHECK(uc_est == q(2));
    CHECK(uc_v.holds());
}

TEST_CASE("condition values scale absolutely") {
    nqd::test::Rng rng(71);
    TruncationPolicy p = nqd::test::exact_policy();
    WeightsPtr w = Weights::make(SequenceSpec::geometric(q(2), q(1)));
    for (int rep = 0; rep < 5; ++rep) {
        std::vector<std::vector<Scalar>> rows;
        for (int r = 0; r < 4; ++r) rows.push_back(rng.sparse_terms(5));
        RowMatrix A = RowMatrix::explicit_rows(rows, Mode::exact);
        Scalar alpha = rng.nonzero_rational();
        RowMatrix sA = A.scaled(alpha);

        auto base = matrix_bound_sup(w, A, p);
        auto scaled = matrix_bound_sup(w, sA, p);
        REQUIRE(base.second.holds());
        REQUIRE(scaled.second.holds());
        CHECK(scaled.first == alpha.abs() * base.first);

        auto on_base = operator_norm(w, A, p);
        auto on_scaled = operator_norm(w, sA, p);
        CHECK(on_scaled.first == alpha.abs() * on_base.first);
    }
}

TEST_CASE("operator norm dominates transform values on the unit ball") {
    // For constant weights the norm scan stabilizes at exactly 1. For growing
    // weights the truncation sup in the row dual norms grows without bound, so
    // the scan stays open; its running estimate still dominates (row 0 alone
    // contributes 1, and transform values on the unit ball stay within 1).
    nqd::test::Rng rng(73);
    TruncationPolicy p = nqd::test::exact_policy(96);
    for (const auto& w : nqd::test::weight_families()) {
        RowMatrix md = mean_difference_matrix(w);
        auto [norm_est, norm_v] = operator_norm(w, md, p);
        if (w->spec().kind() == SequenceSpec::Kind::constant) {
            REQUIRE(norm_v.holds());
            CHECK(norm_est == q(1));
        }
        for (int rep = 0; rep < 10; ++rep) {
            // unit-ball element: transform coefficients in [-1, 1]
            std::vector<Scalar> tau;
            for (Index i = 0; i <= 16; ++i) {
                Scalar t = rng.rational(8, 8);
                while (q(1) < t.abs()) t = rng.rational(8, 8);
                tau.push_back(t);
            }
            auto x = nqd::test::inverse_applied(w, tau);
            for (Index n = 0; n <= 16; ++n) {
                Scalar row_val = q(0);
                for (Index k = 0; k <= n; ++k) row_val += md.at(n, k) * x[static_cast<size_t>(k)];
                CHECK(row_val.abs() <= norm_est);
            }
        }
    }
}

TEST_CASE("dominance also holds for unit-column and explicit matrices") {
    nqd::test::Rng rng(83);
    TruncationPolicy p = nqd::test::exact_policy();
    WeightsPtr w = Weights::make(SequenceSpec::geometric(q(2), q(1)));

    std::vector<RowMatrix> mats;
    mats.push_back(RowMatrix::unit_column(2, Mode::exact));
    mats.push_back(RowMatrix::explicit_rows(
        {{q(1), q(-1, 3)}, {q(0), q(2), q(5, 7)}, {q(-4)}}, Mode::exact));
    for (const auto& A : mats) {
        auto [norm_est, norm_v] = operator_norm(w, A, p);
        REQUIRE(norm_v.holds());
        for (int rep = 0; rep < 10; ++rep) {
            std::vector<Scalar> tau;
            for (Index i = 0; i <= 12; ++i) {
                Scalar t = rng.rational(8, 8);
                while (q(1) < t.abs()) t = rng.rational(8, 8);
                tau.push_back(t);
            }
            auto x = nqd::test::inverse_applied(w, tau);
            for (Index n = 0; n <= 12; ++n) {
                Scalar row_val = q(0);
                for (Index k = 0; k <= 12; ++k)
                    row_val += A.at(n, k) * x[static_cast<size_t>(k)];
                CHECK(row_val.abs() <= norm_est);
            }
        }
    }
}

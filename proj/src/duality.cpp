#include "nqdelta/duality.hpp"

namespace nqd {

const char* to_string(PairingVariant v) {
    return v == PairingVariant::derived ? "derived" : "printed";
}

PairingVariant variant_from_string(const std::string& s) {
    if (s == "derived") return PairingVariant::derived;
    if (s == "printed") return PairingVariant::printed;
    throw ParseError("unknown variant: \"" + s + "\" (expected derived or printed)");
}

PairingMatrix::PairingMatrix(WeightsPtr w, RowFunctional a, PairingVariant v)
    : w_(std::move(w)), a_(std::move(a)), v_(v) {
    if (w_->mode() != a_.mode) throw ModeMismatchError();
}

PairingMatrix::PairingMatrix(WeightsPtr w, const SequenceSpec& a, PairingVariant v)
    : PairingMatrix(std::move(w), RowFunctional::from_sequence(a), v) {}

void PairingMatrix::prepare(Index n) const {
    if (n < 0) return;
    size_t need = static_cast<size_t>(n) + 1;
    if (ready_.load(std::memory_order_acquire) < need) {
        std::lock_guard lock(mu_);
        for (size_t k = pv_.size(); k < need; ++k) {
            Scalar ak = a_.at(static_cast<Index>(k));
            pv_.push_back(k == 0 ? std::move(ak) : pv_.back() + ak);
        }
        ready_.store(pv_.size(), std::memory_order_release);
    }
    w_->ensure(n + 1);
}

Scalar PairingMatrix::prefix(Index k) const {
    if (k < 0) return Scalar::zero(mode());
    prepare(k);
    return pv_[static_cast<size_t>(k)];
}

Scalar PairingMatrix::at(Index n, Index k) const {
    if (n < 0 || k < 0) throw ValidationError("matrix indices must be nonnegative");
    if (k > n) return Scalar::zero(mode());
    if (k == n) return -(w_->diag_ratio(n) * a_.at(n));
    Scalar c = w_->offdiag_factor(k) * (prefix(n) - prefix(k));
    if (v_ == PairingVariant::derived) c -= w_->diag_ratio(k) * a_.at(k);
    return c;
}

Scalar PairingMatrix::row_abs_sum(Index n) const {
    prepare(n);
    Index upper = a_.support ? std::min(n, *a_.support) : n;
    Scalar acc = Scalar::zero(mode());
    for (Index k = 0; k <= upper; ++k) acc += at(n, k).abs();
    return acc;
}

Scalar PairingMatrix::row_sum(Index n) const {
    prepare(n);
    Index upper = a_.support ? std::min(n, *a_.support) : n;
    Scalar acc = Scalar::zero(mode());
    for (Index k = 0; k <= upper; ++k) acc += at(n, k);
    return acc;
}

RowSup row_truncation_sup(WeightsPtr w, const RowFunctional& row, PairingVariant v,
                          const TruncationPolicy& policy) {
    PairingMatrix pm(std::move(w), row, v);
    if (row.support) {
        // beyond m = b+1 the row bound is constant, so this max is the sup
        Index top = *row.support + 1;
        RowSup out{pm.row_abs_sum(0), true, Outcome::holds};
        for (Index m = 1; m <= top; ++m) {
            Scalar val = pm.row_abs_sum(m);
            if (out.value < val) out.value = val;
        }
        return out;
    }
    Verdict est = sup_scan([&pm](Index m) { return pm.row_abs_sum(m); }, -1, policy, Exec::serial,
                           [&pm](Index hi) { pm.prepare(hi); });
    return {est.estimate.value_or(Scalar::zero(pm.mode())), false, est.outcome};
}

Scalar pairing_check(const WeightsPtr& w, const SequenceSpec& a, const SequenceSpec& y, Index N,
                     PairingVariant v) {
    if (N < 0) throw ValidationError("truncation size must be nonnegative");
    Mode m = w->mode();
    if (a.mode() != m || y.mode() != m) throw ModeMismatchError();
    w->ensure(N + 1);
    PairingMatrix pm(w, a, v);
    pm.prepare(N);

    // x = closed-form inverse applied to y, built incrementally
    std::vector<Scalar> xs;
    xs.reserve(static_cast<size_t>(N) + 1);
    Scalar gy_tail = Scalar::zero(m); // sum_{k<n} g_k y_k
    for (Index n = 0; n <= N; ++n) {
        Scalar yn = y.at(n);
        xs.push_back(gy_tail - w->diag_ratio(n) * yn);
        gy_tail += w->offdiag_factor(n) * yn;
    }

    Scalar residual = Scalar::zero(m);
    Scalar lhs = Scalar::zero(m);
    for (Index n = 0; n <= N; ++n) {
        lhs += a.at(n) * xs[static_cast<size_t>(n)];
        Scalar rhs = Scalar::zero(m);
        for (Index k = 0; k <= n; ++k) {
            Scalar yk = y.at(k);
            if (!yk.is_zero()) rhs += pm.at(n, k) * yk;
        }
        Scalar err = (lhs - rhs).abs();
        if (residual < err) residual = err;
    }
    return residual;
}

DualNorm dual_norm(WeightsPtr w, const RowFunctional& a, const TruncationPolicy& policy,
                   PairingVariant v, Exec exec) {
    auto pm = std::make_shared<PairingMatrix>(std::move(w), a, v);
    Verdict verdict = sup_scan([pm](Index n) { return pm->row_abs_sum(n); }, -1, policy, exec,
                               [pm](Index hi) { pm->prepare(hi); });
    Scalar value = verdict.estimate.value_or(Scalar::zero(pm->mode()));
    return {std::move(value), verdict.attained, std::move(verdict)};
}

DualNorm dual_norm(WeightsPtr w, const SequenceSpec& a, const TruncationPolicy& policy,
                   PairingVariant v, Exec exec) {
    return dual_norm(std::move(w), RowFunctional::from_sequence(a), policy, v, exec);
}

Verdict combined_outcome_verdict(const std::vector<Verdict>& parts) {
    Verdict out;
    out.outcome = Outcome::holds;
    for (const auto& p : parts) {
        if (p.fails()) {
            out.outcome = Outcome::fails;
            out.reason = p.reason;
            return out;
        }
        if (p.inconclusive()) out.outcome = Outcome::inconclusive;
    }
    return out;
}

Verdict combined_outcome(const std::vector<Verdict>& parts) {
    return combined_outcome_verdict(parts);
}

BetaDualReport beta_dual_membership(WeightsPtr w, const SequenceSpec& a, SpaceTag domain,
                                    const TruncationPolicy& policy, PairingVariant v, Exec exec) {
    policy.validate();
    if (!domain.transformed)
        throw UnsupportedClassError("beta-dual tests cover the transformed domains only");
    auto pm = std::make_shared<PairingMatrix>(w, a, v);
    auto prep = [pm](Index hi) { pm->prepare(hi); };

    BetaDualReport report;
    auto l1_sup = [&] {
        return sup_scan([pm](Index n) { return pm->row_abs_sum(n); }, -1, policy, exec, prep);
    };
    auto column_limit = [&](Index k) {
        return limit_scan([pm, k](Index n) { return pm->at(n, k); }, policy, prep);
    };

    // column limits feed two of the sets, so compute them once
    std::vector<Scalar> alphas;
    Verdict columns_combined;
    auto eval_columns = [&] {
        std::vector<Verdict> parts;
        for (Index k = 0; k <= policy.column_bound; ++k) {
            Verdict cv = column_limit(k);
            alphas.push_back(cv.estimate.value_or(Scalar::zero(pm->mode())));
            parts.push_back(std::move(cv));
        }
        columns_combined = combined_outcome_verdict(parts);
        if (!columns_combined.holds())
            columns_combined.reason = "some column limit did not stabilize: " + columns_combined.reason;
    };

    std::vector<Verdict> required;
    switch (domain.base) {
    case BaseSpace::c0: {
        Verdict c1 = l1_sup();
        eval_columns();
        report.sets.push_back({"row-l1-sup", c1});
        report.sets.push_back({"column-limits", columns_combined});
        required = {c1, columns_combined};
        break;
    }
    case BaseSpace::c: {
        Verdict c1 = l1_sup();
        eval_columns();
        Verdict c4 = limit_scan([pm](Index n) { return pm->row_sum(n); }, policy, prep);
        report.sets.push_back({"row-l1-sup", c1});
        report.sets.push_back({"column-limits", columns_combined});
        report.sets.push_back({"row-sum-limit", c4});
        required = {c1, columns_combined, c4};
        break;
    }
    case BaseSpace::linf: {
        eval_columns();
        Verdict l1_lim = limit_scan([pm](Index n) { return pm->row_abs_sum(n); }, policy, prep);
        Verdict interchange;
        if (columns_combined.holds() && l1_lim.holds()) {
            Scalar alpha_mass = Scalar::zero(pm->mode());
            for (const auto& al : alphas) alpha_mass += al.abs();
            // tolerance widened by the column count: each |alpha_k| carries tol
            Scalar budget = policy.tol * Scalar::from_int(policy.column_bound + 2, policy.mode());
            bool match = within(*l1_lim.estimate, alpha_mass, budget);
            interchange.outcome = match ? Outcome::holds : Outcome::fails;
            interchange.estimate = *l1_lim.estimate - alpha_mass;
            interchange.reason = match ? ""
                                       : "limit of row l1 mass (" + l1_lim.estimate->str() +
                                             ") differs from the l1 mass of the column limits (" +
                                             alpha_mass.str() + ")";
            interchange.checkpoints = l1_lim.checkpoints;
        } else {
            interchange.outcome = l1_lim.fails() || columns_combined.fails() ? Outcome::fails
                                                                             : Outcome::inconclusive;
            interchange.reason = "needs stabilized column limits and row-l1 limit";
        }
        report.sets.push_back({"column-limits", columns_combined});
        report.sets.push_back({"l1-limit-interchange", interchange});
        required = {columns_combined, interchange};
        break;
    }
    }
    report.column_limits = std::move(alphas);
    report.combined = combined_outcome_verdict(required).outcome;
    return report;
}

Scalar finite_subset_sup(const RowFunctional& row, Index n_terms) {
    if (n_terms < 0) throw ValidationError("subset window must be nonnegative");
    Mode m = row.mode;
    Scalar pos = Scalar::zero(m);
    Scalar neg = Scalar::zero(m);
    for (Index k = 0; k < n_terms; ++k) {
        Scalar v = row.at(k);
        if (v.sgn() > 0) pos += v;
        else neg += v;
    }
    return max(pos, -neg);
}

} // namespace nqd

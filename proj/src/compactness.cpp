#include "nqdelta/compactness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nqd {

const char* to_string(Regime r) {
    switch (r) {
    case Regime::c0_exact: return "c0-exact";
    case Regime::c_sandwich: return "c-sandwich";
    case Regime::linf_upper: return "linf-upper";
    }
    return "?";
}

const char* to_string(Compactness c) {
    switch (c) {
    case Compactness::compact: return "compact";
    case Compactness::not_compact: return "not-compact";
    case Compactness::inconclusive: return "inconclusive";
    }
    return "?";
}

std::pair<Scalar, Verdict> tail_bound(WeightsPtr w, const RowMatrix& A, Index s,
                                      const TruncationPolicy& policy, Exec exec) {
    if (s < 0) throw ValidationError("tail offset must be nonnegative");
    return tail_row_bound_sup(std::move(w), A, s, policy, exec);
}

std::vector<Index> default_offsets(const TruncationPolicy& policy) {
    std::vector<Index> offsets{0};
    // every offset must leave room for `window` checkpoints above it
    double head = std::pow(policy.growth, policy.window);
    Index cap = std::max<Index>(static_cast<Index>(std::floor(static_cast<double>(policy.n_max) / head)), 1);
    Index s = 1;
    while (s <= cap) {
        offsets.push_back(s);
        s = std::max<Index>(s + 1, static_cast<Index>(std::floor(static_cast<double>(s) * policy.growth)));
    }
    return offsets;
}

namespace {

struct Bucket {
    Index offset;
    MaxResult running;
    std::vector<Checkpoint> cps;
    bool diverged = false;

    bool enough(const TruncationPolicy& p) const {
        return static_cast<int>(cps.size()) >= p.window;
    }
    bool trailing_stable(const TruncationPolicy& p) const {
        if (!enough(p)) return false;
        size_t first = cps.size() - static_cast<size_t>(p.window);
        Scalar lo = cps[first].value, hi = cps[first].value;
        if (!lo.finite()) return false;
        for (size_t i = first + 1; i < cps.size(); ++i) {
            if (!cps[i].value.finite()) return false;
            if (cps[i].value < lo) lo = cps[i].value;
            if (hi < cps[i].value) hi = cps[i].value;
        }
        return (hi - lo) <= p.tol;
    }
    bool settled(const TruncationPolicy& p) const {
        return enough(p) && (diverged || trailing_stable(p));
    }
};

} // namespace

std::vector<std::pair<Index, Verdict>> tail_bound_profile(WeightsPtr w, const RowMatrix& A,
                                                          const std::vector<Index>& offsets,
                                                          const TruncationPolicy& policy,
                                                          Exec exec) {
    policy.validate();
    std::vector<Index> sorted = offsets;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (!sorted.empty() && sorted.front() < 0)
        throw ValidationError("tail offsets must be nonnegative");

    std::vector<Bucket> buckets;
    for (Index s : sorted) buckets.push_back(Bucket{s, {}, {}, false});

    std::atomic<bool> inner_open{false};
    auto value_at = [&](Index n) {
        RowSup rs = row_truncation_sup(w, A.row(n), PairingVariant::printed, policy);
        if (!rs.closed && rs.scan_outcome != Outcome::holds) inner_open.store(true);
        return rs.value;
    };
    auto prepare = [&](Index hi) {
        Index need = 1;
        for (Index n = 0; n <= hi; ++n) {
            auto b = A.row_support(n);
            if (!b) {
                need = std::max(need, policy.n_max + 1);
                break;
            }
            need = std::max(need, *b + 2);
        }
        w->ensure(need);
    };

    Index prev = -1;
    for (Index c : policy.checkpoints()) {
        prepare(c);
        const Index lo = prev + 1;
        std::vector<Scalar> seg(static_cast<size_t>(c - lo + 1), Scalar::zero(w->mode()));
#ifdef _OPENMP
        if (exec == Exec::parallel) {
#pragma omp parallel for num_threads(kernel_threads()) schedule(dynamic, 4)
            for (Index n = lo; n <= c; ++n) seg[static_cast<size_t>(n - lo)] = value_at(n);
        } else {
            for (Index n = lo; n <= c; ++n) seg[static_cast<size_t>(n - lo)] = value_at(n);
        }
#else
        (void)exec;
        for (Index n = lo; n <= c; ++n) seg[static_cast<size_t>(n - lo)] = value_at(n);
#endif
        bool all_settled = true;
        for (Bucket& b : buckets) {
            for (Index n = std::max(lo, b.offset + 1); n <= c; ++n)
                merge_max(b.running, MaxResult{seg[static_cast<size_t>(n - lo)], n, true});
            if (b.running.valid) {
                b.cps.push_back({c, b.running.value});
                if (!b.diverged && exceeds(b.running.value, policy.divergence_threshold))
                    b.diverged = true;
            }
            all_settled = all_settled && b.settled(policy);
        }
        prev = c;
        if (all_settled) break;
    }

    std::vector<std::pair<Index, Verdict>> out;
    for (Bucket& b : buckets) {
        Verdict v;
        const bool stable = !b.diverged && b.trailing_stable(policy);
        const bool enough = b.enough(policy);
        v.checkpoints = std::move(b.cps);
        if (b.running.valid) {
            v.estimate = b.running.value;
            v.attained = b.running.argmax;
        }
        if (!b.running.valid) {
            v.outcome = Outcome::inconclusive;
            v.reason = "no rows beyond offset " + std::to_string(b.offset) + " within n_max";
        } else if (b.diverged && enough) {
            v.outcome = Outcome::fails;
            v.reason = "running max escaped the divergence threshold";
        } else if (stable) {
            v.outcome = Outcome::holds;
            if (inner_open.load()) {
                v.outcome = Outcome::inconclusive;
                v.reason = "inner truncation sup did not stabilize for some rows";
            }
        } else {
            v.outcome = Outcome::inconclusive;
            v.reason = b.diverged ? "divergence threshold escaped but too few checkpoints"
                                  : "tail sup not stable within n_max";
        }
        out.emplace_back(b.offset, std::move(v));
    }
    return out;
}

CompactnessBounds mnc_bounds(WeightsPtr w, const RowMatrix& A, SpaceTag domain,
                             BaseSpace codomain, const TruncationPolicy& policy,
                             bool assume_membership, Exec exec) {
    CompactnessBounds out;
    out.membership = class_membership({A, domain, codomain, w, policy}, exec);
    out.membership_assumed = assume_membership;
    if (out.membership.combined != Outcome::holds && !assume_membership) {
        std::string failing;
        for (const auto& c : out.membership.conditions)
            if (c.verdict.outcome != Outcome::holds) {
                failing = std::string(to_string(c.id)) + ": " + to_string(c.verdict.outcome);
                break;
            }
        throw ValidationError("matrix not certified in the class (" + failing +
                              "); pass assume-membership to proceed");
    }

    // Deepen the offset grid only until the limit over s stabilizes; offsets
    // near n_max force full-depth row scans and are rarely needed.
    std::vector<Checkpoint> series;
    bool decided = false;
    for (Index s : default_offsets(policy)) {
        auto [est, v] = tail_bound(w, A, s, policy, exec);
        out.per_offset.emplace_back(s, v);
        if (v.fails()) {
            out.limit.outcome = Outcome::fails;
            out.limit.reason = "tail bound at offset " + std::to_string(s) +
                               " escapes the divergence threshold";
            out.limit.checkpoints = series;
            out.limit.estimate = est;
            decided = true;
            break;
        }
        if (!v.holds()) {
            out.limit.outcome = Outcome::inconclusive;
            out.limit.reason = "tail bound at offset " + std::to_string(s) + " did not stabilize";
            out.limit.checkpoints = series;
            out.limit.estimate = est;
            decided = true;
            break;
        }
        series.push_back({s, est});
        Verdict jv = judge_limit_series(series, policy);
        if (jv.holds()) {
            out.limit = std::move(jv);
            decided = true;
            break;
        }
    }
    if (!decided) out.limit = judge_limit_series(series, policy);

    Mode m = w->mode();
    Scalar L = out.limit.estimate.value_or(Scalar::zero(m));
    switch (codomain) {
    case BaseSpace::c0:
        out.regime = Regime::c0_exact;
        out.lower = L;
        out.upper = L;
        break;
    case BaseSpace::c:
        out.regime = Regime::c_sandwich;
        out.lower = L / Scalar::from_int(2, m);
        out.upper = L;
        break;
    case BaseSpace::linf:
        out.regime = Regime::linf_upper;
        out.lower = Scalar::zero(m);
        out.upper = L;
        break;
    }
    return out;
}

CompactnessVerdict classify_compact(WeightsPtr w, const RowMatrix& A, SpaceTag domain,
                                    BaseSpace codomain, const TruncationPolicy& policy,
                                    bool assume_membership, Exec exec) {
    CompactnessVerdict out;
    out.bounds = mnc_bounds(std::move(w), A, domain, codomain, policy, assume_membership, exec);
    const Verdict& lim = out.bounds.limit;
    const bool necessary = codomain != BaseSpace::linf;

    if (lim.holds() && lim.estimate && !exceeds(*lim.estimate, policy.tol)) {
        out.outcome = Compactness::compact;
        out.reason = "tail bounds vanish in the limit";
        return out;
    }
    if (lim.holds() && lim.estimate) {
        // bounded away from zero: every stabilized sample exceeds 2 tol
        Scalar two_tol = policy.tol + policy.tol;
        bool away = !lim.checkpoints.empty();
        size_t first = lim.checkpoints.size() >= static_cast<size_t>(policy.window)
                           ? lim.checkpoints.size() - static_cast<size_t>(policy.window)
                           : 0;
        for (size_t i = first; i < lim.checkpoints.size(); ++i)
            away = away && exceeds(lim.checkpoints[i].value, two_tol);
        if (away && necessary) {
            out.outcome = Compactness::not_compact;
            out.reason = "tail-bound limit " + lim.estimate->str() + " is bounded away from zero";
        } else if (away) {
            out.outcome = Compactness::inconclusive;
            out.reason = "nonzero tail-bound limit " + lim.estimate->str() +
                         "; for this codomain the vanishing condition is sufficient only, so "
                         "the operator may still be compact";
        } else {
            out.outcome = Compactness::inconclusive;
            out.reason = "tail-bound limit neither vanishes nor is bounded away from zero";
        }
        return out;
    }
    if (lim.fails() && necessary) {
        out.outcome = Compactness::not_compact;
        out.reason = "tail bounds diverge";
        return out;
    }
    out.outcome = Compactness::inconclusive;
    out.reason = lim.reason.empty() ? "tail-bound limit not established" : lim.reason;
    return out;
}

} // namespace nqd

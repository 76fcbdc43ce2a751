#include "nqdelta/scan.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nqd {

namespace {

Exec g_default_exec =
#ifdef _OPENMP
    Exec::parallel;
#else
    Exec::serial;
#endif

int g_threads = 0;

// true when `a` should replace `b` as the current max
bool better(const MaxResult& a, const MaxResult& b) {
    if (!b.valid) return a.valid;
    if (!a.valid) return false;
    bool anf = !a.value.finite();
    bool bnf = !b.value.finite();
    if (anf != bnf) return anf;
    if (anf && bnf) return a.argmax < b.argmax;
    if (b.value < a.value) return true;
    if (a.value < b.value) return false;
    return a.argmax < b.argmax;
}

} // namespace

Exec default_exec() { return g_default_exec; }
void set_default_exec(Exec e) { g_default_exec = e; }

int kernel_threads() {
#ifdef _OPENMP
    return g_threads > 0 ? g_threads : omp_get_max_threads();
#else
    return 1;
#endif
}

void set_kernel_threads(int n) { g_threads = n < 0 ? 0 : n; }

void merge_max(MaxResult& into, const MaxResult& from) {
    if (better(from, into)) into = from;
}

MaxResult segment_max_serial(const ValueFn& f, Index lo, Index hi) {
    MaxResult best;
    for (Index n = lo; n <= hi; ++n) {
        MaxResult cand{f(n), n, true};
        merge_max(best, cand);
    }
    return best;
}

MaxResult segment_max_parallel(const ValueFn& f, Index lo, Index hi) {
#ifdef _OPENMP
    MaxResult best;
    if (lo > hi) return best;
#pragma omp parallel num_threads(kernel_threads())
    {
        MaxResult local;
#pragma omp for nowait schedule(dynamic, 4)
        for (Index n = lo; n <= hi; ++n) {
            MaxResult cand{f(n), n, true};
            merge_max(local, cand);
        }
#pragma omp critical(nqd_segment_max)
        merge_max(best, local);
    }
    return best;
#else
    return segment_max_serial(f, lo, hi);
#endif
}

MaxResult segment_max(const ValueFn& f, Index lo, Index hi, Exec exec) {
    return exec == Exec::parallel ? segment_max_parallel(f, lo, hi)
                                  : segment_max_serial(f, lo, hi);
}

namespace {

// Window stability over the trailing checkpoints: max - min <= tol.
bool window_stable(const std::vector<Checkpoint>& cps, int window, const Scalar& tol) {
    if (static_cast<int>(cps.size()) < window) return false;
    size_t first = cps.size() - static_cast<size_t>(window);
    Scalar lo = cps[first].value;
    Scalar hi = cps[first].value;
    for (size_t i = first + 1; i < cps.size(); ++i) {
        if (!cps[i].value.finite()) return false;
        if (cps[i].value < lo) lo = cps[i].value;
        if (hi < cps[i].value) hi = cps[i].value;
    }
    return cps[first].value.finite() && (hi - lo) <= tol;
}

Verdict finish(Outcome outcome, std::optional<Scalar> estimate,
               std::vector<Checkpoint> cps, std::string reason,
               std::optional<Index> attained = std::nullopt) {
    Verdict v;
    v.outcome = outcome;
    v.estimate = std::move(estimate);
    v.attained = attained;
    v.checkpoints = std::move(cps);
    v.reason = std::move(reason);
    return v;
}

} // namespace

Verdict sup_scan(const ValueFn& f, Index lo, const TruncationPolicy& policy, Exec exec,
                 const PrepareFn& prepare) {
    policy.validate();
    std::vector<Checkpoint> cps;
    MaxResult running;
    bool diverged = false;
    Index prev = lo;
    for (Index c : policy.checkpoints()) {
        if (c <= lo) continue;
        if (prepare) prepare(c);
        MaxResult seg = segment_max(f, prev + 1, c, exec);
        merge_max(running, seg);
        prev = c;
        if (!running.valid) continue;
        cps.push_back({c, running.value});
        if (!diverged && exceeds(running.value, policy.divergence_threshold)) diverged = true;
        bool enough = static_cast<int>(cps.size()) >= policy.window;
        if (diverged && enough)
            return finish(Outcome::fails, running.value, std::move(cps),
                          "running max escaped the divergence threshold (first at index " +
                              std::to_string(running.argmax) + ")",
                          running.argmax);
        if (!diverged && enough && window_stable(cps, policy.window, policy.tol))
            return finish(Outcome::holds, running.value, std::move(cps), "", running.argmax);
    }
    if (cps.empty())
        return finish(Outcome::inconclusive, std::nullopt, {},
                      "no checkpoints beyond index " + std::to_string(lo) + " within n_max");
    std::string why = diverged
                          ? "divergence threshold escaped but too few checkpoints for a verdict"
                          : "running max not stable across " + std::to_string(policy.window) +
                                " checkpoints by n_max";
    return finish(Outcome::inconclusive, running.value, std::move(cps), why, running.argmax);
}

Verdict sup_scan_stream(const std::function<Scalar()>& next, const TruncationPolicy& policy) {
    policy.validate();
    std::vector<Checkpoint> cps;
    MaxResult running;
    bool diverged = false;
    Index n = 0;
    for (Index c : policy.checkpoints()) {
        for (; n <= c; ++n) merge_max(running, MaxResult{next(), n, true});
        cps.push_back({c, running.value});
        if (!diverged && exceeds(running.value, policy.divergence_threshold)) diverged = true;
        bool enough = static_cast<int>(cps.size()) >= policy.window;
        if (diverged && enough)
            return finish(Outcome::fails, running.value, std::move(cps),
                          "running max escaped the divergence threshold (first at index " +
                              std::to_string(running.argmax) + ")",
                          running.argmax);
        if (!diverged && enough && window_stable(cps, policy.window, policy.tol))
            return finish(Outcome::holds, running.value, std::move(cps), "", running.argmax);
    }
    std::string why = diverged
                          ? "divergence threshold escaped but too few checkpoints for a verdict"
                          : "running max not stable across " + std::to_string(policy.window) +
                                " checkpoints by n_max";
    return finish(Outcome::inconclusive, running.valid ? std::optional(running.value) : std::nullopt,
                  std::move(cps), why,
                  running.valid ? std::optional(running.argmax) : std::nullopt);
}

namespace {

Verdict judge_limit_impl(const std::vector<Checkpoint>& series, const TruncationPolicy& policy,
                         bool online_stop) {
    std::vector<Checkpoint> cps;
    bool diverged = false;
    for (const Checkpoint& cp : series) {
        cps.push_back(cp);
        if (!diverged && exceeds(cp.value, policy.divergence_threshold)) diverged = true;
        bool enough = static_cast<int>(cps.size()) >= policy.window;
        if (diverged && enough)
            return finish(Outcome::fails, cp.value, std::move(cps),
                          "samples escaped the divergence threshold");
        if (!diverged && enough && window_stable(cps, policy.window, policy.tol) && online_stop)
            return finish(Outcome::holds, cp.value, std::move(cps), "");
    }
    if (cps.empty())
        return finish(Outcome::inconclusive, std::nullopt, {}, "no samples");
    if (!diverged && window_stable(cps, policy.window, policy.tol))
        return finish(Outcome::holds, cps.back().value, std::move(cps), "");
    std::string why = diverged
                          ? "divergence threshold escaped but too few samples for a verdict"
                          : "samples not stable across " + std::to_string(policy.window) +
                                " checkpoints";
    Scalar last = cps.back().value;
    return finish(Outcome::inconclusive, last, std::move(cps), why);
}

} // namespace

Verdict limit_scan(const ValueFn& f, const TruncationPolicy& policy, const PrepareFn& prepare) {
    policy.validate();
    std::vector<Checkpoint> series;
    for (Index c : policy.checkpoints()) {
        if (prepare) prepare(c);
        series.push_back({c, f(c)});
        // judge incrementally so we can stop early
        Verdict v = judge_limit_impl(series, policy, true);
        if (v.outcome != Outcome::inconclusive) return v;
    }
    return judge_limit_impl(series, policy, true);
}

Verdict limit_scan_stream(const std::function<Scalar()>& next, const TruncationPolicy& policy) {
    policy.validate();
    std::vector<Checkpoint> series;
    Index n = 0;
    for (Index c : policy.checkpoints()) {
        Scalar v = Scalar::zero(policy.mode());
        for (; n <= c; ++n) v = next();
        series.push_back({c, v});
        Verdict jv = judge_limit_impl(series, policy, true);
        if (jv.outcome != Outcome::inconclusive) return jv;
    }
    return judge_limit_impl(series, policy, true);
}

Verdict judge_limit_series(const std::vector<Checkpoint>& series, const TruncationPolicy& policy) {
    policy.validate();
    return judge_limit_impl(series, policy, true);
}

Verdict require_zero(Verdict v, const TruncationPolicy& policy) {
    if (v.outcome == Outcome::holds && v.estimate) {
        if (exceeds(*v.estimate, policy.tol)) {
            v.outcome = Outcome::fails;
            v.reason = "limit stabilized at " + v.estimate->str() + ", not zero";
        }
    }
    return v;
}

Verdict limit_zero_scan(const ValueFn& f, const TruncationPolicy& policy, const PrepareFn& prepare) {
    return require_zero(limit_scan(f, policy, prepare), policy);
}

Verdict limit_zero_stream(const std::function<Scalar()>& next, const TruncationPolicy& policy) {
    return require_zero(limit_scan_stream(next, policy), policy);
}

} // namespace nqd

#pragma once

#include <functional>

#include "nqdelta/verdict.hpp"

namespace nqd {

/// Kernel execution mode. Parallel kernels use OpenMP; every parallel
/// reduction here is a max-reduce with a deterministic tie-break, so serial
/// and parallel runs produce identical results bit for bit.
enum class Exec { serial, parallel };

Exec default_exec();
void set_default_exec(Exec e);
int kernel_threads();
void set_kernel_threads(int n); // 0 = library default

using ValueFn = std::function<Scalar(Index)>;
/// Called serially with the segment's upper bound before a parallel segment
/// runs, so shared memo tables can grow outside the parallel region.
using PrepareFn = std::function<void(Index)>;

struct MaxResult {
    Scalar value;
    Index argmax = -1;
    bool valid = false;
};

/// max of f over [lo, hi], ties resolved toward the smaller index,
/// non-finite values win immediately (they are divergence evidence).
MaxResult segment_max_serial(const ValueFn& f, Index lo, Index hi);
MaxResult segment_max_parallel(const ValueFn& f, Index lo, Index hi);
MaxResult segment_max(const ValueFn& f, Index lo, Index hi, Exec exec);
void merge_max(MaxResult& into, const MaxResult& from);

/// Running sup of f(n) over n > lo, judged at the policy's checkpoints.
/// Holds: the running max unchanged (within tol) across `window` checkpoints.
/// Fails: a value escaped divergence_threshold. Otherwise inconclusive at n_max.
/// The estimate field always carries the running max seen so far.
Verdict sup_scan(const ValueFn& f, Index lo, const TruncationPolicy& policy,
                 Exec exec = default_exec(), const PrepareFn& prepare = {});

/// Same contract, but consumes consecutive values n = 0, 1, 2, ... from a
/// stateful stream; always serial.
Verdict sup_scan_stream(const std::function<Scalar()>& next, const TruncationPolicy& policy);

/// Windowed limit of f(n) sampled at the policy's checkpoints.
/// Holds: `window` consecutive checkpoint values pairwise within tol
/// (estimate = the last). Fails: a sample escaped divergence_threshold.
Verdict limit_scan(const ValueFn& f, const TruncationPolicy& policy,
                   const PrepareFn& prepare = {});

/// Streaming variant: consumes consecutive values and samples at checkpoints.
Verdict limit_scan_stream(const std::function<Scalar()>& next, const TruncationPolicy& policy);

/// Limit must exist and be zero within tol; a stabilized nonzero limit Fails.
Verdict limit_zero_scan(const ValueFn& f, const TruncationPolicy& policy,
                        const PrepareFn& prepare = {});
Verdict limit_zero_stream(const std::function<Scalar()>& next, const TruncationPolicy& policy);

/// Applies the window/tol/divergence rules to an already-computed series
/// (used for the geometrically spaced tail-offset limits).
Verdict judge_limit_series(const std::vector<Checkpoint>& series, const TruncationPolicy& policy);

/// Downgrades a limit verdict to "limit is zero" semantics.
Verdict require_zero(Verdict v, const TruncationPolicy& policy);

} // namespace nqd

// Times the OpenMP scan kernels against the serial reference on the two
// hot paths: the double row-bound sup and the dual-norm row scan.

#include <chrono>
#include <cstdio>

#include "nqdelta/classes.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace nqd;

namespace {

double time_ms(const std::function<void()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

TruncationPolicy fixed_depth_policy(Index n) {
    TruncationPolicy p = TruncationPolicy::defaults(Mode::floating);
    p.n_start = n;
    p.n_max = n;
    return p;
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads available: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; parallel timings equal serial\n");
#endif

    WeightsPtr w = Weights::make(SequenceSpec::power(1, Mode::floating));
    RowMatrix mean = RowMatrix::from_triangle(
        compose(riesz_mean(w), backward_difference(Mode::floating)));

    std::printf("%-28s %8s %12s %12s %8s\n", "kernel", "depth", "serial ms", "parallel ms",
                "speedup");
    for (Index depth : {128, 256, 512}) {
        TruncationPolicy policy = fixed_depth_policy(depth);
        Scalar s_serial = Scalar::real(0), s_par = Scalar::real(0);
        double t_serial = time_ms(
            [&] { s_serial = matrix_bound_sup(w, mean, policy, Exec::serial).first; });
        double t_par = time_ms(
            [&] { s_par = matrix_bound_sup(w, mean, policy, Exec::parallel).first; });
        if (!(s_serial == s_par)) {
            std::printf("MISMATCH: serial %s vs parallel %s\n", s_serial.str().c_str(),
                        s_par.str().c_str());
            return 1;
        }
        std::printf("%-28s %8lld %12.2f %12.2f %7.2fx\n", "row-bound double sup",
                    static_cast<long long>(depth), t_serial, t_par, t_serial / t_par);
    }

    SequenceSpec a = SequenceSpec::explicit_terms(
        {Scalar::real(1), Scalar::real(-0.5), Scalar::real(0.25), Scalar::real(2)},
        SequenceSpec::Tail::repeat_last);
    for (Index depth : {512, 2048, 4096}) {
        TruncationPolicy policy = fixed_depth_policy(depth);
        Scalar s_serial = Scalar::real(0), s_par = Scalar::real(0);
        double t_serial =
            time_ms([&] { s_serial = dual_norm(w, a, policy, PairingVariant::derived, Exec::serial).value; });
        double t_par =
            time_ms([&] { s_par = dual_norm(w, a, policy, PairingVariant::derived, Exec::parallel).value; });
        if (!(s_serial == s_par)) {
            std::printf("MISMATCH: serial %s vs parallel %s\n", s_serial.str().c_str(),
                        s_par.str().c_str());
            return 1;
        }
        std::printf("%-28s %8lld %12.2f %12.2f %7.2fx\n", "dual-norm row scan",
                    static_cast<long long>(depth), t_serial, t_par, t_serial / t_par);
    }
    return 0;
}

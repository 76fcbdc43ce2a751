#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "nqdelta/cli.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

nqd::json load_spec(const std::string& path) {
    try {
        if (path == "-") return nqd::json::parse(std::cin);
        std::ifstream in(path);
        if (!in) throw nqd::ParseError("cannot open spec file: " + path);
        return nqd::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw nqd::ParseError(std::string("malformed JSON: ") + e.what());
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact and numerical computation with weighted-mean difference sequence spaces"};
    app.require_subcommand(1);

    std::string spec_path;
    nqd::cli::Options opts;
    std::string mode_flag;
    int threads = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--spec", spec_path, "problem spec JSON file, or - for stdin")->required();
        sub->add_option("--format", opts.format, "output format: json, csv, or text")
            ->check(CLI::IsMember({"json", "csv", "text"}));
        sub->add_flag("--no-timestamp", opts.no_timestamp, "omit the generated_at field");
        sub->add_option("--nmax", [&](const CLI::results_t& r) {
            try { opts.n_max = std::stoll(r[0]); } catch (...) { return false; }
            return true;
        }, "override the policy's n_max");
        sub->add_option("--tol", [&](const CLI::results_t& r) {
            opts.tol = r[0];
            return true;
        }, "override the policy's tolerance");
        sub->add_flag("--exact", [&](size_t) { opts.mode = nqd::Mode::exact; },
                      "force exact rational arithmetic");
        sub->add_flag("--float", [&](size_t) { opts.mode = nqd::Mode::floating; },
                      "force floating-point arithmetic");
        sub->add_option("--variant", [&](const CLI::results_t& r) {
            opts.variant = r[0];
            return true;
        }, "pairing-matrix variant: derived or printed");
        sub->add_option("--domain", [&](const CLI::results_t& r) {
            opts.domain = r[0];
            return true;
        }, "transformed domain: c0, c, or linf");
        sub->add_option("--codomain", [&](const CLI::results_t& r) {
            opts.codomain = r[0];
            return true;
        }, "codomain: c0, c, or linf");
        sub->add_option("--space", [&](const CLI::results_t& r) {
            opts.space = r[0];
            return true;
        }, "space tag for member: c0, c, or linf");
        sub->add_option("--index", [&](const CLI::results_t& r) {
            try { opts.index = std::stoll(r[0]); } catch (...) { return false; }
            return true;
        }, "basis or unit-column index");
        sub->add_option("--size", [&](const CLI::results_t& r) {
            try { opts.size = std::stoll(r[0]); } catch (...) { return false; }
            return true;
        }, "truncation size for transform, basis, and invert");
        sub->add_flag("--assume-member", [&](size_t) { opts.assume_membership = true; },
                      "skip the class-membership gate of the compactness commands");
        sub->add_flag("--serial", opts.serial, "run the scan kernels serially");
        sub->add_option("--threads", threads, "OpenMP thread count (0 = default)");
    };

    for (const char* name : {"transform", "norm", "basis", "member", "beta-dual", "dual-norm",
                             "class-check", "mnc", "classify-compact", "invert"})
        add_common(app.add_subcommand(name));

    CLI11_PARSE(app, argc, argv);

    nqd::set_kernel_threads(threads);
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#endif

    nqd::cli::Command cmd = nqd::cli::command_from_string(app.get_subcommands().front()->get_name());

    nqd::cli::Report report;
    try {
        report = nqd::cli::run_safe(cmd, load_spec(spec_path), opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return nqd::cli::exit_code_for(e);
    }
    std::cout << report.render(opts.format);
    if (report.body.contains("error"))
        std::cerr << "error: " << report.body["error"].get<std::string>() << "\n";
    return report.exit_code;
}

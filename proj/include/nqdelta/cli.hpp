#pragma once

#include "nqdelta/json_io.hpp"

namespace nqd::cli {

enum class Command {
    transform,
    norm,
    basis,
    member,
    beta_dual,
    dual_norm,
    class_check,
    mnc,
    classify_compact,
    invert,
};

const char* to_string(Command c);
Command command_from_string(const std::string& s);

/// Flag overrides applied on top of the JSON problem spec.
struct Options {
    std::string format = "json"; // json | csv | text
    bool no_timestamp = false;
    std::optional<Mode> mode;
    std::optional<Index> n_max;
    std::optional<std::string> tol;
    std::optional<std::string> variant;
    std::optional<std::string> domain;
    std::optional<std::string> codomain;
    std::optional<std::string> space;
    std::optional<Index> index; // basis vector / unit column index
    std::optional<Index> size;  // truncation size for transform/invert
    std::optional<bool> assume_membership;
    bool serial = false;
};

/// Fully validated inputs of one invocation.
struct ProblemSpec {
    Mode mode = Mode::exact;
    WeightsPtr weights;                  // required by most commands
    std::optional<BuiltMatrix> matrix;
    std::optional<SequenceSpec> sequence;
    TruncationPolicy policy;
    std::optional<SpaceTag> space;
    SpaceTag domain{BaseSpace::c0, true};
    BaseSpace codomain = BaseSpace::linf;
    bool has_domain = false, has_codomain = false;
    PairingVariant variant = PairingVariant::derived;
    Index index = 0;
    Index size = 32;
    bool assume_membership = false;

    json echo() const; // canonical re-encoding; reparsing it gives the same spec
};

ProblemSpec parse_problem_spec(const json& j, const Options& opts);

struct Report {
    json body;
    int exit_code = 0;

    std::string render(const std::string& format) const;
};

/// Parses, dispatches, and assembles the machine-readable report.
/// Throws typed errors on invalid input; exit_code_for maps them.
Report run(Command cmd, const json& spec_json, const Options& opts);

/// Like run, but turns errors into an error report with exit_code > 2.
Report run_safe(Command cmd, const json& spec_json, const Options& opts);

int exit_code_for(const std::exception& e);
int exit_code_for(Outcome o);

} // namespace nqd::cli

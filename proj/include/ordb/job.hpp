#pragma once

#include "ordb/serialize.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ordb {

/// A parsed batch job. Documents are JSON or a small TOML subset
/// ([section] headers; key = value with string, integer, boolean or
/// array values; # comments). Unknown fields are rejected by name.
struct JobSpec {
    GroupCtxPtr group;
    /// check-axioms | search-order | cone-search | embed | realize |
    /// witness | bi-witness
    std::string task;

    std::string gset_kind = "regular"; // regular | coset | conjugation | trivial
    std::vector<std::string> subgroup; // coset subgroup generators, as words
    int radius = 2;
    OrderMode mode = OrderMode::Right;

    /// Order source for embed / realize / witness / bi-witness:
    /// lex | magnus | cone; empty picks the backend default (lex for
    /// free abelian, magnus for free, cone search otherwise).
    std::string order;
    int cone_radius = 0; // 0 = twice the window radius

    /// Optional embed/realize enumeration override: explicit point
    /// names, or a deterministic shuffle of the ball order when the
    /// seed is nonzero.
    std::vector<std::string> enumeration;
    std::uint64_t enumeration_seed = 0;

    std::size_t max_ball = GroupCtx::kDefaultBallCap;
    std::uint64_t node_cap = 1'000'000;
};

JobSpec parse_job(const std::string& text);

struct RunResult {
    /// 0 found/certified/pass, 2 sound negative, 3 out of budget with
    /// no conclusion. Input and resource errors surface as exceptions.
    int exit_code = 1;
    std::string certificate; // canonical JSON text
    std::string plot_csv;    // empty when the task has nothing to plot
    std::string plot_svg;
};

RunResult run_job(const JobSpec& job);

struct VerifyResult {
    bool ok = false;
    std::string check; // names the failed check when not ok
};

/// Re-checks a certificate from its text alone: rebuilds every object,
/// reconstructs windows from their declared parameters, re-runs the
/// axiom checkers and replays refutations. Witness data is additionally
/// re-derived, which is exact because every construction here is
/// deterministic.
VerifyResult verify_certificate(const std::string& text);

} // namespace ordb

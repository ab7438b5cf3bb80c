#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sq/moves.hpp"
#include "sq/vassiliev.hpp"

namespace sq {

/// The four reference bundles: M_T, X_(132) with the operator singular
/// structure, M_{T,S} with v = (13), and the order-4 singular structure.
std::vector<Probe> reference_bundles();

struct SuiteOptions {
    int trials = 500;
    std::uint64_t seed = 1;
    int jobs = 1;
    bool include_derived = true;
    CodeBudget budget{};
};

struct SuiteFailure {
    int trial = 0;
    std::string move;
    std::string bundle;
    std::string before;
    std::string after;
};

struct SuiteReport {
    std::uint64_t seed = 0;
    int trials = 0;
    /// (trial, bundle) pairs compared before and after the move
    int comparisons = 0;
    int inverse_failures = 0;
    std::map<std::string, int> moves;
    std::vector<SuiteFailure> failures;

    bool ok() const { return failures.empty() && inverse_failures == 0; }
};

/// Trial t targets move id t mod |catalog| so every move is exercised: it
/// draws random codes until that move applies, applies a uniformly chosen
/// site, checks the inverse restores the code and compares enhanced
/// invariants under every reference bundle that can color both codes.
/// Output depends only on the options, never on `jobs`.
SuiteReport run_move_suite(const SuiteOptions& opts);

/// The catalog exercised by run_move_suite.
std::vector<MoveId> suite_catalog(bool include_derived);

struct ForbiddenWitness {
    PassCode before;
    PassCode after;
    std::string bundle;
    std::string poly_before;
    std::string poly_after;
};

/// Searches random codes for a forbidden-move triangle whose rearrangement
/// changes an enhanced invariant under some reference bundle.
std::optional<ForbiddenWitness> find_forbidden_witness(std::uint64_t seed, int attempts = 2000);

/// Per-trial seed derivation shared by the suite and the CLI.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

} // namespace sq

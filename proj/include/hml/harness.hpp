#pragma once

#include "hml/generators.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace hml
{

struct HarnessOptions
{
    // Verify against a deliberately broken must-test compiler.
    bool mutate = false;
    std::size_t exploration_cap = 100000;
    // Worker threads; 0 picks the hardware concurrency. The report does
    // not depend on this value.
    std::size_t threads = 0;
};

// A disagreement, with enough data to replay it through the CLI: when
// `formula` and `test` are both set, `check` on the formula and `must` or
// `may` on the test disagree at `state`; when `formula` and `other_formula`
// are set, `check` disagrees between the two.
struct Counterexample
{
    std::string check;
    std::size_t trial = 0;
    std::string lts;
    std::string state;
    std::string formula;
    std::string other_formula;
    std::string test;
    std::string expected;
    std::string actual;
};

struct CheckResult
{
    std::string name;
    // Trials in which the check ran.
    std::size_t trials = 0;
    // Individual comparisons (typically one per state).
    std::size_t cases = 0;
    std::size_t failures = 0;
    // Trials skipped because the generated instance did not meet the
    // check's precondition.
    std::size_t skipped = 0;
    // Lowest-numbered failing trial.
    std::optional< Counterexample > counterexample;
};

struct IterationStats
{
    std::size_t fixpoints = 0;
    std::size_t iterations = 0;
    std::size_t max_iterations = 0;
    std::size_t non_monotone_steps = 0;
};

struct TrialReport
{
    TrialConfig config;
    bool mutated = false;
    // Trials whose random process LTS has a divergent state.
    std::size_t divergent_trials = 0;
    std::vector< CheckResult > checks;
    IterationStats iterations;

    bool passed() const;
    const CheckResult* find( const std::string& name ) const;
};

// Names of the checks, in report order.
const std::vector< std::string >& check_names();

// Runs every check for cfg.trials trials. Failures are data in the
// report, not exceptions; only an invalid configuration throws.
TrialReport verify_theorems( const TrialConfig& cfg, const HarnessOptions& options = {} );

// Line-delimited text with a fixed field order.
std::string to_text( const TrialReport& report );
std::string to_json( const TrialReport& report );

} // namespace hml

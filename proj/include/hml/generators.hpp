#pragma once

#include "hml/formula.hpp"
#include "hml/lts.hpp"
#include "hml/random.hpp"
#include "hml/semantics.hpp"
#include "hml/test_term.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace hml
{

struct TrialConfig
{
    std::uint64_t seed = 0;
    std::size_t trials = 500;
    std::size_t max_states = 8;
    std::size_t alphabet_size = 3;
    std::size_t max_formula_depth = 5;
    std::size_t max_test_depth = 5;
    // Probability that a generated transition is a τ.
    double tau_density = 0.3;
    // Probability that a τ self-loop is injected into a generated LTS.
    double divergence_bias = 0.4;
    // Probability that a generated binder gets a guarded occurrence of its
    // variable.
    double guard_bias = 0.7;

    // Throws domain_error for zero bounds, probabilities outside [0, 1] or
    // an alphabet larger than the available action names.
    void validate() const;
};

enum class fragment
{
    may,
    must,
    full,
};

// Visible action names of the generators: a, b, c, ... (never `w`).
std::vector< std::string > action_names( std::size_t count );

// States s0 .. s(n-1) with 1 ≤ n ≤ max_states, out-degree at most
// min(3, n - 1) and one extra τ self-loop with probability divergence_bias.
Lts generate_lts( const TrialConfig& cfg, Rng& rng );

// The fixed processes of the classical counterexamples in one LTS:
// s (s→a zero, s→b zero), p (p→a zero), q (q→b zero), the divergent
// variant d of s (d→τ d, d→a zero, d→b zero) and the deadlock zero.
Lts fixture_lts();

// A formula of the fragment with depth at most cfg.max_formula_depth. Its
// free variables are drawn from `scope` (empty for a closed formula).
// Binders are named X<k> by nesting level, continuing after `scope`.
Formula generate_formula( const TrialConfig& cfg, fragment kind, Rng& rng,
                          const std::vector< std::string >& scope = {} );

// A closed test term of depth at most cfg.max_test_depth.
Test generate_test( const TrialConfig& cfg, Rng& rng );

// A closed system of 1..max_vars equations over variables Y0, Y1, ...,
// bodies drawn from the full fragment.
SimFormula generate_system( const TrialConfig& cfg, Rng& rng, std::size_t max_vars );

} // namespace hml

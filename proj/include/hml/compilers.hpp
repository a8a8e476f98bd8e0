#pragma once

#include "hml/formula.hpp"
#include "hml/lts.hpp"
#include "hml/semantics.hpp"
#include "hml/test_lts.hpp"
#include "hml/test_term.hpp"

#include <string>
#include <vector>

namespace hml
{

struct MustCompileOptions
{
    // Deliberately wrong [a]φ clause (no τ.ω.0 escape), used to check that
    // the verification harness detects a broken compiler.
    bool mutate_box = false;
};

// T_must: mustHML formula to a test that it must-represents.
//
//     tt ↦ ω.0   ff ↦ 0   Acc A ↦ Σ a.ω.0   X ↦ X
//     [τ]φ ↦ τ.T(φ)   [a]φ ↦ a.T(φ) + τ.ω.0
//     φ ∧ ψ ↦ ω.0 when closed and tt-equivalent, else τ.T(φ) + τ.T(ψ)
//     min X.φ ↦ T(φ) when X is not free in φ, else μX.T(φ)
//
// Open input is accepted so that the translation can be compared with
// substitution. Throws domain_error outside the mustHML grammar.
Test formula_to_must_test( const Formula& phi, const MustCompileOptions& options = {} );

// T_may: mayHML formula to a test that it may-represents.
//
//     tt ↦ ω.0   ff ↦ 0   X ↦ X   φ ∨ ψ ↦ τ.T(φ) + τ.T(ψ)
//     ⟨α⟩φ ↦ α.T(φ)   min X.φ ↦ μX.T(φ)
Test formula_to_may_test( const Formula& phi );

// The equation system of a test LTS: one variable per state reachable from
// `root`, in breadth-first order, with the root projected (index 0).
// Variables are named X<i>_<hash>, the hash taken from `labels[s]` when
// given (one per state of `test`) and from the state name otherwise.
SimFormula must_system( const Lts& test, StateId root, const std::vector< std::string >& labels = {} );
SimFormula may_system( const Lts& test, StateId root, const std::vector< std::string >& labels = {} );
// Same, for the reachable LTS of a closed test, hashing canonical terms.
SimFormula must_system( const Test& t, std::size_t cap = default_exploration_cap );
SimFormula may_system( const Test& t, std::size_t cap = default_exploration_cap );

// A formula that must- (may-) represents the test: the Bekić elimination of
// the system above. The result lies in mustHML (mayHML).
Formula test_to_must_formula( const Test& t, std::size_t cap = default_exploration_cap );
Formula test_to_must_formula( const Lts& test, StateId root );
Formula test_to_may_formula( const Test& t, std::size_t cap = default_exploration_cap );
Formula test_to_may_formula( const Lts& test, StateId root );

} // namespace hml

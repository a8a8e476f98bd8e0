#pragma once

#include "hml/formula.hpp"
#include "hml/lts.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace hml
{

// Environment ρ: Var → 2^S. All sets belong to the same LTS.
using Env = std::map< std::string, StateSet, std::less<> >;

// A simultaneous least fixpoint min_i(X̄, φ̄). `index` is 0-based.
struct SimFormula
{
    std::vector< std::string > vars;
    std::vector< Formula > bodies;
    std::size_t index = 0;

    // Throws domain_error unless the system is well formed: n ≥ 1, equal
    // lengths, distinct variable names, index in range.
    void validate() const;
    // Free variables of the bodies other than the system variables.
    std::vector< std::string > free_vars() const;
    bool is_closed() const { return free_vars().empty(); }
};

// One equation per line, `X = phi`, preceded by a header naming the
// projected variable.
std::string to_string( const SimFormula& system );

struct EvalStats
{
    // Fixpoint computations actually performed (memo misses).
    std::size_t fixpoints = 0;
    // Applications of a fixpoint body, summed over all computations.
    std::size_t iterations = 0;
    // Length of the longest single Kleene sequence.
    std::size_t max_iterations = 0;
    // Steps that broke the expected monotone direction; always 0 for
    // monotone formulae.
    std::size_t non_monotone_steps = 0;
};

// Model checker for recHML over one LTS. Fixpoints are computed by Kleene
// iteration (from ∅ for min, from S for max). A fixpoint that is evaluated
// again under an environment that moved in its favour (larger sets for
// min, smaller for max) restarts from its previous value, which bounds the
// cost of nested fixpoints of the same kind. Results of fixpoint and closed
// subformulae are memoized by node identity and the values of their free
// variables, so one Evaluator should be reused across formulae on the same
// LTS. Not thread-safe; use one instance per thread.
class Evaluator
{
public:
    explicit Evaluator( const Lts& lts ) : _lts{ lts } {}

    // Throws domain_error when a free variable of `phi` is unbound in `env`.
    StateSet evaluate( const Formula& phi, const Env& env = {} );

    // The whole least solution vector of the system, from the all-∅ vector.
    std::vector< StateSet > solve( const SimFormula& system, const Env& env = {} );
    StateSet evaluate( const SimFormula& system, const Env& env = {} );

    const EvalStats& stats() const { return _stats; }
    const Lts& lts() const { return _lts; }

private:
    StateSet eval( const Formula& phi, Env& env );
    StateSet eval_fixpoint( const Formula& phi, Env& env );
    StateSet acceptance( const std::vector< std::string >& actions ) const;
    void record_sequence( std::size_t length );

    struct KeyHash
    {
        std::size_t operator()( const std::vector< std::uint64_t >& key ) const;
    };

    // Keys hold raw node addresses; the formula is kept alive alongside its
    // value so an address can never be reused by a different node.
    struct Memo
    {
        Formula pin;
        StateSet value;
    };

    // Last value of a fixpoint node and the free-variable values it was
    // computed under.
    struct Warm
    {
        Formula pin;
        std::vector< StateSet > env;
        StateSet value;
    };

    const Lts& _lts;
    std::unordered_map< std::vector< std::uint64_t >, Memo, KeyHash > _memo;
    std::unordered_map< const FormulaNode*, Warm > _warm;
    EvalStats _stats;
};

StateSet interpret( const Lts& lts, const Formula& phi, const Env& env = {} );
StateSet interpret_simultaneous( const Lts& lts, const SimFormula& system, const Env& env = {} );

// Reduces a closed simultaneous system to nested single fixpoints. The
// projected variable is moved to the front, then the last remaining variable
// is eliminated first by substituting min X_n.φ_n into the other equations.
// Throws domain_error for open systems.
Formula bekic_eliminate( const SimFormula& system );

// Finite approximation φ^k of a mustHML formula: φ^0 = ff and
// (min X.φ)^(k+1) = (φ{min X.φ/X})^k. Recursion-free for closed input.
// Throws domain_error outside the mustHML grammar.
Formula approximant( const Formula& phi, unsigned k );

// Fragment membership. Both throw domain_error for open formulae.
bool is_mayhml( const Formula& phi );
bool is_musthml( const Formula& phi );
// Grammar membership ignoring closedness (for subterms).
bool in_may_grammar( const Formula& phi );
bool in_must_grammar( const Formula& phi );
// First subterm outside the respective grammar, if any.
std::optional< Formula > first_non_must( const Formula& phi );
std::optional< Formula > first_non_may( const Formula& phi );

// Decides whether a closed mustHML formula is logically equivalent to tt:
// true iff it is built from tt, ∧ and min X.φ alone, with no variable
// occurrence (an occurring bound variable forces that fixpoint to ∅).
// Throws domain_error for input outside closed mustHML.
bool is_tt_grammar( const Formula& phi );

// Maximum number of min/max binders on a root-to-leaf path.
std::size_t fixpoint_nesting_depth( const Formula& phi );

} // namespace hml

#pragma once

#include "hml/action.hpp"
#include "hml/state_set.hpp"

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hml
{

struct Transition
{
    StateId source;
    Action action;
    StateId target;

    auto operator<=>( const Transition& ) const = default;
};

// A finite labelled transition system. Immutable once built; the strong
// transition relation, τ-closures and the divergence table are computed at
// construction, weak derivatives are memoized on first use (thread-safe).
class Lts
{
public:
    const std::string& name() const { return _name; }
    StateId initial() const { return _initial; }
    std::size_t num_states() const { return _state_names.size(); }

    const std::string& state_name( StateId s ) const;
    std::optional< StateId > find_state( std::string_view name ) const;
    // Throws domain_error for unknown names.
    StateId state( std::string_view name ) const;

    // Sorted visible action names.
    const std::vector< std::string >& alphabet() const { return _alphabet; }
    bool has_visible( std::string_view a ) const;
    bool has_omega() const { return _has_omega; }

    // Sorted by (source, action, target), without duplicates.
    const std::vector< Transition >& transitions() const { return _transitions; }
    std::span< const Transition > outgoing( StateId s ) const;

    StateSet empty_set() const { return StateSet::empty( num_states() ); }
    StateSet full_set() const { return StateSet::full( num_states() ); }

    // Succ(α, s).
    StateSet strong_successors( StateId s, const Action& alpha ) const;
    // {s' | s ⇒τ s'}; reflexive.
    const StateSet& weak_tau_closure( StateId s ) const;
    // For α = τ the τ-closure, for visible a the relation ⇒τ ∘ →a ∘ ⇒τ.
    // Throws for unknown states, for ω and for actions outside the alphabet.
    const StateSet& weak_derivatives( StateId s, const Action& alpha ) const;
    // s⇓: no infinite τ-path from s.
    bool converges( StateId s ) const;
    const StateSet& convergent_states() const { return _convergent; }
    // States lying on a τ-cycle (self-loops included).
    const StateSet& tau_cyclic_states() const { return _tau_cyclic; }

    // {s | s ⇒α s' for some s' ∈ target}. Visible actions outside the
    // alphabet yield the empty set. ω is rejected.
    StateSet weak_predecessors( const StateSet& target, const Action& alpha ) const;

private:
    friend class LtsBuilder;
    Lts() = default;

    void check_state( StateId s ) const;
    // Index into the per-action tables: 0 = τ, 1 = ω, 2 + i = alphabet[i].
    std::optional< std::size_t > action_index( const Action& alpha ) const;
    StateSet tau_predecessor_closure( const StateSet& target ) const;
    void finalize();

    struct WeakCache;

    std::string _name;
    StateId _initial = 0;
    std::vector< std::string > _state_names;
    std::unordered_map< std::string, StateId > _state_ids;
    std::vector< std::string > _alphabet;
    bool _has_omega = false;
    std::vector< Transition > _transitions;
    std::vector< std::size_t > _out_offsets;
    // Per action index: (source, target) pairs.
    std::vector< std::vector< std::pair< StateId, StateId > > > _by_action;
    std::vector< StateSet > _tau_closure;
    StateSet _tau_cyclic;
    StateSet _convergent;
    std::shared_ptr< WeakCache > _weak_cache;
};

class LtsBuilder
{
public:
    explicit LtsBuilder( std::string name = "lts" ) : _name{ std::move( name ) } {}

    // Idempotent: returns the existing id for a known name.
    StateId add_state( std::string_view name );
    void add_transition( StateId source, const Action& action, StateId target );
    void add_transition( std::string_view source, const Action& action, std::string_view target );
    void set_initial( StateId s );
    void set_initial( std::string_view name ) { set_initial( add_state( name ) ); }

    std::size_t num_states() const { return _names.size(); }

    // Throws domain_error when no state was declared.
    Lts build() const;

private:
    std::string _name;
    std::vector< std::string > _names;
    std::unordered_map< std::string, StateId > _ids;
    std::vector< Transition > _transitions;
    std::optional< StateId > _initial;
};

} // namespace hml

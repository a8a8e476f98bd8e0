#include "hml/harness.hpp"

#include "hml/compilers.hpp"
#include "hml/error.hpp"
#include "hml/experiment.hpp"
#include "hml/formula_io.hpp"
#include "hml/lts_io.hpp"
#include "hml/test_io.hpp"
#include "hml/test_lts.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <functional>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace hml
{

namespace
{

enum check_id : std::size_t
{
    must_formula_to_test,
    must_test_to_formula,
    must_output_fragment,
    must_round_trip,
    may_formula_to_test,
    may_test_to_formula,
    may_output_fragment,
    may_round_trip,
    bekic,
    fixpoint_prefixed,
    fixpoint_unfold,
    approximants,
    divergent_full_space,
    divergent_open_binder,
    tt_equivalence,
    acc_equivalence,
    substitution_lemma,
    unfold_law,
    must_compile_commutation,
    may_compile_commutation,
    kleene_monotone,
    num_checks,
};

// Above this many nodes (as a tree) a formula is not printed into a
// counterexample.
constexpr std::size_t printable_size = 20000;

// Bekić output shares subterms, so the printed size can be exponential in
// the node count; computed on the DAG with saturation.
std::size_t tree_size( const Formula& phi, std::unordered_map< const FormulaNode*, std::size_t >& memo )
{
    if ( auto it = memo.find( phi.node() ); it != memo.end() )
        return it->second;
    std::size_t size = 1;
    for ( const auto& child : phi.node()->children )
        size = std::min( printable_size + 1, size + tree_size( child, memo ) );
    memo.emplace( phi.node(), size );
    return size;
}

std::string printable( const Formula& phi )
{
    std::unordered_map< const FormulaNode*, std::size_t > memo;
    return tree_size( phi, memo ) <= printable_size ? to_string( phi ) : std::string{};
}

std::string format_set( const Lts& lts, const StateSet& set )
{
    std::string out = "{";
    bool first = true;
    set.for_each( [ & ]( StateId s ) {
        out += ( first ? "" : "," ) + lts.state_name( s );
        first = false;
    } );
    return out + "}";
}

std::string flag( bool value ) { return value ? "true" : "false"; }

struct CheckOutcome
{
    bool ran = false;
    bool skipped = false;
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::optional< Counterexample > counterexample;
};

struct TrialOutcome
{
    std::vector< CheckOutcome > checks = std::vector< CheckOutcome >( num_checks );
    IterationStats stats;
    bool divergent = false;
};

class Trial
{
public:
    Trial( const TrialConfig& cfg, const HarnessOptions& options, std::size_t index )
            : _cfg{ cfg }, _options{ options }, _index{ index }, _fixture{ fixture_lts() }
    {}

    TrialOutcome run()
    {
        Rng process_rng( derive_seed( _cfg.seed, _index, num_checks ) );
        _process.emplace( generate_lts( _cfg, process_rng ) );
        _outcome.divergent = _process->convergent_states().count() < _process->num_states();

        guarded( must_formula_to_test, [ this ]( Rng& rng ) { formula_to_test( rng, true ); } );
        guarded( must_test_to_formula, [ this ]( Rng& rng ) { test_to_formula( rng, true ); } );
        guarded( must_round_trip, [ this ]( Rng& rng ) { round_trip( rng, true ); } );
        guarded( may_formula_to_test, [ this ]( Rng& rng ) { formula_to_test( rng, false ); } );
        guarded( may_test_to_formula, [ this ]( Rng& rng ) { test_to_formula( rng, false ); } );
        guarded( may_round_trip, [ this ]( Rng& rng ) { round_trip( rng, false ); } );
        guarded( bekic, [ this ]( Rng& rng ) { check_bekic( rng ); } );
        guarded( fixpoint_prefixed, [ this ]( Rng& rng ) { check_prefixed( rng ); } );
        guarded( fixpoint_unfold, [ this ]( Rng& rng ) { check_unfold( rng ); } );
        guarded( approximants, [ this ]( Rng& rng ) { check_approximants( rng ); } );
        guarded( divergent_full_space, [ this ]( Rng& rng ) { check_full_space( rng ); } );
        guarded( divergent_open_binder, [ this ]( Rng& rng ) { check_open_binder( rng ); } );
        guarded( tt_equivalence, [ this ]( Rng& rng ) { check_tt_equivalence( rng ); } );
        guarded( acc_equivalence, [ this ]( Rng& rng ) { check_acc( rng ); } );
        guarded( substitution_lemma, [ this ]( Rng& rng ) { check_substitution( rng ); } );
        guarded( unfold_law, [ this ]( Rng& rng ) { check_unfold_law( rng ); } );
        guarded( must_compile_commutation, [ this ]( Rng& rng ) { check_commutation( rng, true ); } );
        guarded( may_compile_commutation, [ this ]( Rng& rng ) { check_commutation( rng, false ); } );
        guarded( kleene_monotone, [ this ]( Rng& rng ) { check_kleene( rng ); } );
        return std::move( _outcome );
    }

private:
    // Runs one check on its own random stream; an exception is recorded as
    // a failure of that check.
    void guarded( check_id id, const std::function< void( Rng& ) >& body )
    {
        _current = id;
        auto& outcome = _outcome.checks[ id ];
        outcome.ran = true;
        Rng rng( derive_seed( _cfg.seed, _index, id ) );
        try
        {
            body( rng );
        }
        catch ( const std::exception& e )
        {
            Counterexample cex;
            cex.expected = "no error";
            cex.actual = std::string( "error: " ) + e.what();
            fail( std::move( cex ) );
        }
    }

    void fail( Counterexample cex )
    {
        auto& outcome = _outcome.checks[ _current ];
        ++outcome.failures;
        if ( !outcome.counterexample )
        {
            cex.check = check_names()[ _current ];
            cex.trial = _index;
            outcome.counterexample = std::move( cex );
        }
    }

    void count( std::size_t n = 1 ) { _outcome.checks[ _current ].cases += n; }
    void skip() { _outcome.checks[ _current ].skipped = true; }

    void absorb( const Evaluator& ev )
    {
        const auto& s = ev.stats();
        auto& total = _outcome.stats;
        total.fixpoints += s.fixpoints;
        total.iterations += s.iterations;
        total.max_iterations = std::max( total.max_iterations, s.max_iterations );
        total.non_monotone_steps += s.non_monotone_steps;
    }

    std::vector< const Lts* > processes() const { return { &*_process, &_fixture }; }

    TrialConfig with_states( std::size_t bound ) const
    {
        auto cfg = _cfg;
        cfg.max_states = std::min( cfg.max_states, bound );
        return cfg;
    }

    // ⟦φ⟧ against the verdict of a test, state by state.
    void compare_with_test( const Formula& phi, const Test& test, bool must )
    {
        auto explored = reachable_lts( test, _options.exploration_cap );
        for ( const Lts* lts : processes() )
        {
            Evaluator ev( *lts );
            auto holds = ev.evaluate( phi );
            absorb( ev );
            for ( StateId p = 0; p < lts->num_states(); ++p )
            {
                auto graph = parallel_compose( *lts, explored.lts, p, explored.root );
                bool passes = must ? must_satisfy( graph ) : may_satisfy( graph );
                count();
                if ( passes != holds.contains( p ) )
                {
                    Counterexample cex;
                    cex.lts = to_text( *lts );
                    cex.state = lts->state_name( p );
                    cex.formula = to_string( phi );
                    cex.test = to_string( test );
                    cex.expected = "holds=" + flag( holds.contains( p ) );
                    cex.actual = std::string( must ? "must=" : "may=" ) + flag( passes );
                    fail( std::move( cex ) );
                }
            }
        }
    }

    void formula_to_test( Rng& rng, bool must )
    {
        auto phi = generate_formula( _cfg, must ? fragment::must : fragment::may, rng );
        auto test = must ? formula_to_must_test( phi, { .mutate_box = _options.mutate } ) : formula_to_may_test( phi );
        compare_with_test( phi, test, must );
    }

    void test_to_formula( Rng& rng, bool must )
    {
        auto test = generate_test( _cfg, rng );
        auto phi = must ? test_to_must_formula( test, _options.exploration_cap )
                        : test_to_may_formula( test, _options.exploration_cap );

        auto fragment_check = must ? must_output_fragment : may_output_fragment;
        auto saved = _current;
        _current = fragment_check;
        _outcome.checks[ fragment_check ].ran = true;
        count();
        bool inside = must ? is_musthml( phi ) : is_mayhml( phi );
        if ( !inside )
        {
            Counterexample cex;
            cex.formula = printable( phi );
            cex.test = to_string( test );
            cex.expected = must ? "mustHML" : "mayHML";
            cex.actual = "offending subterm " + to_string( *( must ? first_non_must( phi ) : first_non_may( phi ) ) );
            fail( std::move( cex ) );
        }
        _current = saved;

        auto explored = reachable_lts( test, _options.exploration_cap );
        for ( const Lts* lts : processes() )
        {
            Evaluator ev( *lts );
            auto holds = ev.evaluate( phi );
            absorb( ev );
            for ( StateId p = 0; p < lts->num_states(); ++p )
            {
                auto graph = parallel_compose( *lts, explored.lts, p, explored.root );
                bool passes = must ? must_satisfy( graph ) : may_satisfy( graph );
                count();
                if ( passes != holds.contains( p ) )
                {
                    Counterexample cex;
                    cex.lts = to_text( *lts );
                    cex.state = lts->state_name( p );
                    cex.formula = printable( phi );
                    cex.test = to_string( test );
                    cex.expected = std::string( must ? "must=" : "may=" ) + flag( passes );
                    cex.actual = "holds=" + flag( holds.contains( p ) );
                    fail( std::move( cex ) );
                }
            }
        }
    }

    void round_trip( Rng& rng, bool must )
    {
        auto phi = generate_formula( _cfg, must ? fragment::must : fragment::may, rng );
        auto test = must ? formula_to_must_test( phi, { .mutate_box = _options.mutate } ) : formula_to_may_test( phi );
        auto back = must ? test_to_must_formula( test, _options.exploration_cap )
                         : test_to_may_formula( test, _options.exploration_cap );
        for ( const Lts* lts : processes() )
        {
            Evaluator ev( *lts );
            auto original = ev.evaluate( phi );
            auto recovered = ev.evaluate( back );
            absorb( ev );
            count();
            if ( original == recovered )
                continue;
            StateId p = 0;
            while ( original.contains( p ) == recovered.contains( p ) )
                ++p;
            Counterexample cex;
            cex.lts = to_text( *lts );
            cex.state = lts->state_name( p );
            cex.formula = to_string( phi );
            cex.other_formula = printable( back );
            cex.test = to_string( test );
            cex.expected = format_set( *lts, original );
            cex.actual = format_set( *lts, recovered );
            fail( std::move( cex ) );
        }
    }

    void check_bekic( Rng& rng )
    {
        auto system = generate_system( _cfg, rng, 4 );
        auto plain = bekic_eliminate( system );
        for ( int i = 0; i < 20; ++i )
        {
            auto lts = generate_lts( _cfg, rng );
            Evaluator ev( lts );
            auto simultaneous = ev.evaluate( system );
            auto nested = ev.evaluate( plain );
            absorb( ev );
            count();
            if ( simultaneous != nested )
            {
                Counterexample cex;
                cex.lts = to_text( lts );
                cex.formula = to_string( system );
                cex.other_formula = printable( plain );
                cex.expected = format_set( lts, simultaneous );
                cex.actual = format_set( lts, nested );
                fail( std::move( cex ) );
            }
        }
    }

    StateSet random_set( const Lts& lts, Rng& rng )
    {
        StateSet set = lts.empty_set();
        for ( StateId s = 0; s < lts.num_states(); ++s )
            if ( rng.chance( 0.5 ) )
                set.insert( s );
        return set;
    }

    void check_prefixed( Rng& rng )
    {
        auto system = generate_system( _cfg, rng, 4 );
        auto lts = generate_lts( _cfg, rng );
        Evaluator ev( lts );
        const auto n = system.vars.size();

        // Grow random sets until they are prefixed: φ̄(P̄) ⊆ P̄.
        std::vector< StateSet > bound;
        for ( std::size_t i = 0; i < n; ++i )
            bound.push_back( random_set( lts, rng ) );
        while ( true )
        {
            Env env;
            for ( std::size_t i = 0; i < n; ++i )
                env.emplace( system.vars[ i ], bound[ i ] );
            bool prefixed = true;
            std::vector< StateSet > image;
            for ( const auto& body : system.bodies )
                image.push_back( ev.evaluate( body, env ) );
            for ( std::size_t i = 0; i < n; ++i )
                if ( !image[ i ].is_subset_of( bound[ i ] ) )
                {
                    prefixed = false;
                    bound[ i ] |= image[ i ];
                }
            if ( prefixed )
                break;
        }

        auto solution = ev.solve( system );
        absorb( ev );
        for ( std::size_t i = 0; i < n; ++i )
        {
            count();
            if ( !solution[ i ].is_subset_of( bound[ i ] ) )
            {
                Counterexample cex;
                cex.lts = to_text( lts );
                cex.formula = to_string( system );
                cex.expected = system.vars[ i ] + " within " + format_set( lts, bound[ i ] );
                cex.actual = format_set( lts, solution[ i ] );
                fail( std::move( cex ) );
            }
        }
    }

    void check_unfold( Rng& rng )
    {
        auto system = generate_system( _cfg, rng, 4 );
        auto lts = generate_lts( _cfg, rng );
        Evaluator ev( lts );
        auto solution = ev.solve( system );
        Env at_solution;
        for ( std::size_t i = 0; i < system.vars.size(); ++i )
            at_solution.emplace( system.vars[ i ], solution[ i ] );
        for ( std::size_t i = 0; i < system.vars.size(); ++i )
        {
            auto unfolded = ev.evaluate( system.bodies[ i ], at_solution );
            count();
            if ( unfolded != solution[ i ] )
            {
                Counterexample cex;
                cex.lts = to_text( lts );
                cex.formula = to_string( system );
                cex.expected = system.vars[ i ] + " = " + format_set( lts, solution[ i ] );
                cex.actual = format_set( lts, unfolded );
                fail( std::move( cex ) );
            }
        }

        auto body_cfg = _cfg;
        body_cfg.max_formula_depth = std::max< std::size_t >( 1, _cfg.max_formula_depth - 1 );
        auto body = generate_formula( body_cfg, fragment::full, rng, { "Z" } );
        auto phi = Formula::min( "Z", body );
        auto unfolded = substitute( body, "Z", phi );
        auto lhs = ev.evaluate( phi );
        auto rhs = ev.evaluate( unfolded );
        absorb( ev );
        count();
        if ( lhs != rhs )
        {
            Counterexample cex;
            cex.lts = to_text( lts );
            cex.formula = to_string( phi );
            cex.other_formula = to_string( unfolded );
            cex.expected = format_set( lts, lhs );
            cex.actual = format_set( lts, rhs );
            fail( std::move( cex ) );
        }
    }

    void check_approximants( Rng& rng )
    {
        auto phi = generate_formula( _cfg, fragment::must, rng );
        auto lts = generate_lts( with_states( 6 ), rng );
        Evaluator ev( lts );
        auto target = ev.evaluate( phi );
        const auto bound = lts.num_states() * fixpoint_nesting_depth( phi ) + 2;

        StateSet previous = lts.empty_set();
        std::optional< std::size_t > reached;
        for ( std::size_t k = 0; k <= bound; ++k )
        {
            auto current = ev.evaluate( approximant( phi, static_cast< unsigned >( k ) ) );
            count();
            if ( !previous.is_subset_of( current ) || !current.is_subset_of( target ) )
            {
                Counterexample cex;
                cex.lts = to_text( lts );
                cex.formula = to_string( phi );
                cex.expected = "chain below " + format_set( lts, target );
                cex.actual = "k=" + std::to_string( k ) + " gives " + format_set( lts, current ) + " after "
                             + format_set( lts, previous );
                fail( std::move( cex ) );
                return;
            }
            if ( current == target && !reached )
                reached = k;
            previous = std::move( current );
        }
        absorb( ev );
        if ( !reached )
        {
            Counterexample cex;
            cex.lts = to_text( lts );
            cex.formula = to_string( phi );
            cex.expected = format_set( lts, target ) + " by k=" + std::to_string( bound );
            cex.actual = format_set( lts, previous );
            fail( std::move( cex ) );
        }
    }

    Lts divergent_process( Rng& rng )
    {
        auto cfg = _cfg;
        cfg.divergence_bias = 1.0;
        return generate_lts( cfg, rng );
    }

    void check_full_space( Rng& rng )
    {
        auto phi = generate_formula( _cfg, fragment::must, rng );
        auto lts = divergent_process( rng );
        for ( const Lts* process : { &lts, &_fixture } )
        {
            Evaluator ev( *process );
            auto holds = ev.evaluate( phi );
            absorb( ev );
            ( process->convergent_states().complement() ).for_each( [ & ]( StateId p ) {
                count();
                if ( holds.contains( p ) && !holds.is_full() )
                {
                    Counterexample cex;
                    cex.lts = to_text( *process );
                    cex.state = process->state_name( p );
                    cex.formula = to_string( phi );
                    cex.expected = "all states";
                    cex.actual = format_set( *process, holds );
                    fail( std::move( cex ) );
                }
            } );
        }
    }

    void check_open_binder( Rng& rng )
    {
        auto body_cfg = _cfg;
        body_cfg.max_formula_depth = std::max< std::size_t >( 1, _cfg.max_formula_depth - 1 );
        auto body = generate_formula( body_cfg, fragment::must, rng, { "Z" } );
        for ( int attempt = 1; attempt < 8 && !body.has_free( "Z" ); ++attempt )
            body = generate_formula( body_cfg, fragment::must, rng, { "Z" } );
        if ( !body.has_free( "Z" ) )
        {
            skip();
            return;
        }
        auto phi = Formula::min( "Z", body );
        auto lts = divergent_process( rng );
        for ( const Lts* process : { &lts, &_fixture } )
        {
            Evaluator ev( *process );
            auto holds = ev.evaluate( phi );
            absorb( ev );
            count();
            if ( holds.is_full() )
            {
                Counterexample cex;
                cex.lts = to_text( *process );
                cex.formula = to_string( phi );
                cex.expected = "not all states";
                cex.actual = format_set( *process, holds );
                fail( std::move( cex ) );
            }
        }
    }

    void check_tt_equivalence( Rng& rng )
    {
        auto phi = generate_formula( _cfg, fragment::must, rng );
        const bool claimed = is_tt_grammar( phi );
        auto lts = divergent_process( rng );
        for ( const Lts* process : { &lts, &_fixture } )
        {
            Evaluator ev( *process );
            auto holds = ev.evaluate( phi );
            absorb( ev );
            count();
            // A divergent state satisfies exactly the tt-equivalent formulae.
            bool agrees = claimed ? holds.is_full() : !holds.intersects( process->convergent_states().complement() );
            if ( !agrees )
            {
                Counterexample cex;
                cex.lts = to_text( *process );
                cex.formula = to_string( phi );
                cex.expected = claimed ? "all states" : "no divergent state";
                cex.actual = format_set( *process, holds );
                fail( std::move( cex ) );
            }
        }
    }

    void check_acc( Rng& rng )
    {
        std::vector< std::string > offered;
        if ( !rng.chance( 0.25 ) )
            for ( const auto& a : action_names( _cfg.alphabet_size ) )
                if ( rng.chance( 0.5 ) )
                    offered.push_back( a );
        auto acc = Formula::acc( offered );
        std::vector< Formula > options;
        for ( const auto& a : offered )
            options.push_back( Formula::diamond( Action::visible( a ), Formula::tt() ) );
        auto spelled = Formula::box( Action::tau(), disj_all( options ) );
        for ( const Lts* process : processes() )
        {
            Evaluator ev( *process );
            auto lhs = ev.evaluate( acc );
            auto rhs = ev.evaluate( spelled );
            absorb( ev );
            count();
            if ( lhs != rhs )
            {
                Counterexample cex;
                cex.lts = to_text( *process );
                cex.formula = to_string( acc );
                cex.other_formula = to_string( spelled );
                cex.expected = format_set( *process, rhs );
                cex.actual = format_set( *process, lhs );
                fail( std::move( cex ) );
            }
        }
    }

    void check_substitution( Rng& rng )
    {
        const std::vector< std::string > scope{ "X0", "X1", "Y" };
        auto phi = generate_formula( _cfg, fragment::full, rng, scope );
        auto small = _cfg;
        small.max_formula_depth = std::min< std::size_t >( 3, _cfg.max_formula_depth );
        auto psi = generate_formula( small, fragment::full, rng, scope );
        auto lts = generate_lts( _cfg, rng );
        Env env;
        for ( const auto& v : scope )
            env.emplace( v, random_set( lts, rng ) );

        Evaluator ev( lts );
        auto substituted = substitute( phi, "Y", psi );
        auto lhs = ev.evaluate( substituted, env );
        auto extended = env;
        extended.insert_or_assign( "Y", ev.evaluate( psi, env ) );
        auto rhs = ev.evaluate( phi, extended );
        absorb( ev );
        count();
        if ( lhs != rhs )
        {
            Counterexample cex;
            cex.lts = to_text( lts );
            cex.formula = to_string( phi ) + " with Y := " + to_string( psi );
            cex.other_formula = to_string( substituted );
            cex.expected = format_set( lts, rhs );
            cex.actual = format_set( lts, lhs );
            fail( std::move( cex ) );
        }
    }

    void check_unfold_law( Rng& rng )
    {
        auto test = generate_test( _cfg, rng );
        if ( test.kind() != test_kind::mu )
            test = Test::mu( "Z", test );
        auto explored = reachable_lts( test, _options.exploration_cap );
        std::size_t recursive = 0;
        for ( StateId m = 0; m < explored.terms.size() && recursive < 3; ++m )
        {
            if ( explored.terms[ m ].kind() != test_kind::mu )
                continue;
            ++recursive;
            auto out = explored.lts.outgoing( m );
            if ( out.size() != 1 || !out.front().action.is_tau() )
            {
                Counterexample cex;
                cex.test = to_string( explored.terms[ m ] );
                cex.expected = "a single tau transition";
                cex.actual = std::to_string( out.size() ) + " transitions";
                fail( std::move( cex ) );
                continue;
            }
            for ( const Lts* process : processes() )
                for ( StateId p = 0; p < process->num_states(); ++p )
                {
                    auto law = must_unfold_law( *process, p, explored.lts, m, out.front().target );
                    count();
                    if ( !law.holds() )
                    {
                        Counterexample cex;
                        cex.lts = to_text( *process );
                        cex.state = process->state_name( p );
                        cex.test = to_string( explored.terms[ m ] );
                        cex.expected = "unfolding preserves must";
                        cex.actual = "converges=" + flag( law.converges ) + " must_recursive="
                                     + flag( law.must_recursive ) + " must_unfolded=" + flag( law.must_unfolded );
                        fail( std::move( cex ) );
                    }
                }
        }
    }

    void check_commutation( Rng& rng, bool must )
    {
        auto kind = must ? fragment::must : fragment::may;
        auto phi = generate_formula( _cfg, kind, rng, { "Y" } );
        auto small = _cfg;
        small.max_formula_depth = std::min< std::size_t >( 3, _cfg.max_formula_depth );
        auto psi = generate_formula( small, kind, rng, { "X0" } );
        // The ∧ clause maps closed tt-equivalent formulae to ω.0, which does
        // not commute with substitution; such ψ are outside the property.
        if ( must && psi.is_closed() && is_tt_grammar( psi ) )
        {
            skip();
            return;
        }
        auto compile = [ & ]( const Formula& f ) {
            return must ? formula_to_must_test( f, { .mutate_box = _options.mutate } ) : formula_to_may_test( f );
        };
        auto lhs = compile( substitute( phi, "Y", psi ) );
        auto rhs = test_substitute( compile( phi ), "Y", compile( psi ) );
        count();
        if ( !alpha_equivalent( lhs, rhs ) )
        {
            Counterexample cex;
            cex.formula = to_string( phi ) + " with Y := " + to_string( psi );
            cex.expected = to_string( rhs );
            cex.actual = to_string( lhs );
            fail( std::move( cex ) );
        }
    }

    void check_kleene( Rng& rng )
    {
        auto phi = generate_formula( _cfg, fragment::full, rng );
        auto system = generate_system( _cfg, rng, 4 );
        auto lts = generate_lts( _cfg, rng );
        const auto states = lts.num_states();

        Evaluator single( lts );
        single.evaluate( phi );
        Evaluator joint( lts );
        joint.evaluate( system );
        absorb( single );
        absorb( joint );

        const std::pair< const Evaluator*, std::size_t > runs[] = {
            { &single, states + 1 },
            { &joint, std::max( states + 1, system.vars.size() * states + 1 ) },
        };
        for ( const auto& [ ev, limit ] : runs )
        {
            count();
            const auto& s = ev->stats();
            if ( s.non_monotone_steps != 0 || s.max_iterations > limit )
            {
                Counterexample cex;
                cex.lts = to_text( lts );
                cex.formula = ev == &single ? to_string( phi ) : to_string( system );
                cex.expected = "monotone, at most " + std::to_string( limit ) + " iterations";
                cex.actual = "non_monotone_steps=" + std::to_string( s.non_monotone_steps )
                             + " max_iterations=" + std::to_string( s.max_iterations );
                fail( std::move( cex ) );
            }
        }
    }

    const TrialConfig& _cfg;
    const HarnessOptions& _options;
    std::size_t _index;
    Lts _fixture;
    std::optional< Lts > _process;
    TrialOutcome _outcome;
    check_id _current = must_formula_to_test;
};

std::string format_double( double value )
{
    char buffer[ 32 ];
    auto result = std::to_chars( buffer, buffer + sizeof buffer, value );
    return std::string( buffer, result.ptr );
}

// Report fields are single-line.
std::string one_line( const std::string& text )
{
    std::string out;
    for ( char c : text )
    {
        if ( c == '\n' )
        {
            if ( !out.empty() && out.back() != ' ' )
                out += "; ";
        }
        else
            out += c;
    }
    while ( !out.empty() && ( out.back() == ' ' || out.back() == ';' ) )
        out.pop_back();
    return out;
}

} // namespace

const std::vector< std::string >& check_names()
{
    static const std::vector< std::string > names{
        "must-formula-to-test",
        "must-test-to-formula",
        "must-output-fragment",
        "must-round-trip",
        "may-formula-to-test",
        "may-test-to-formula",
        "may-output-fragment",
        "may-round-trip",
        "bekic",
        "fixpoint-prefixed",
        "fixpoint-unfold",
        "approximants",
        "divergent-full-space",
        "divergent-open-binder",
        "tt-equivalence",
        "acc-equivalence",
        "substitution-lemma",
        "unfold-law",
        "must-compile-commutation",
        "may-compile-commutation",
        "kleene-monotone",
    };
    return names;
}

bool TrialReport::passed() const
{
    return std::all_of( checks.begin(), checks.end(), []( const CheckResult& c ) { return c.failures == 0; } );
}

const CheckResult* TrialReport::find( const std::string& name ) const
{
    auto it = std::find_if( checks.begin(), checks.end(), [ & ]( const CheckResult& c ) { return c.name == name; } );
    return it == checks.end() ? nullptr : &*it;
}

TrialReport verify_theorems( const TrialConfig& cfg, const HarnessOptions& options )
{
    cfg.validate();

    std::vector< TrialOutcome > outcomes( cfg.trials );
    std::atomic< std::size_t > next{ 0 };
    auto worker = [ & ] {
        for ( auto i = next++; i < cfg.trials; i = next++ )
            outcomes[ i ] = Trial( cfg, options, i ).run();
    };
    std::size_t threads = options.threads ? options.threads : std::max( 1u, std::thread::hardware_concurrency() );
    threads = std::min( threads, std::max< std::size_t >( cfg.trials, 1 ) );
    std::vector< std::thread > pool;
    for ( std::size_t i = 1; i < threads; ++i )
        pool.emplace_back( worker );
    worker();
    for ( auto& t : pool )
        t.join();

    TrialReport report;
    report.config = cfg;
    report.mutated = options.mutate;
    for ( const auto& name : check_names() )
        report.checks.push_back( CheckResult{ .name = name } );
    for ( const auto& outcome : outcomes )
    {
        report.divergent_trials += outcome.divergent;
        for ( std::size_t id = 0; id < num_checks; ++id )
        {
            const auto& o = outcome.checks[ id ];
            auto& total = report.checks[ id ];
            total.trials += o.ran && !o.skipped;
            total.skipped += o.skipped;
            total.cases += o.cases;
            total.failures += o.failures;
            if ( o.counterexample && !total.counterexample )
                total.counterexample = o.counterexample;
        }
        report.iterations.fixpoints += outcome.stats.fixpoints;
        report.iterations.iterations += outcome.stats.iterations;
        report.iterations.max_iterations = std::max( report.iterations.max_iterations, outcome.stats.max_iterations );
        report.iterations.non_monotone_steps += outcome.stats.non_monotone_steps;
    }
    return report;
}

std::string to_text( const TrialReport& report )
{
    const auto& c = report.config;
    std::ostringstream out;
    out << "report verify\n";
    out << "config seed=" << c.seed << " trials=" << c.trials << " max_states=" << c.max_states
        << " alphabet_size=" << c.alphabet_size << " max_formula_depth=" << c.max_formula_depth
        << " max_test_depth=" << c.max_test_depth << " tau_density=" << format_double( c.tau_density )
        << " divergence_bias=" << format_double( c.divergence_bias ) << " guard_bias=" << format_double( c.guard_bias )
        << " mutate=" << flag( report.mutated ) << '\n';
    out << "divergent_trials " << report.divergent_trials << '\n';
    for ( const auto& check : report.checks )
        out << "check " << check.name << " trials=" << check.trials << " cases=" << check.cases
            << " skipped=" << check.skipped << " failures=" << check.failures << '\n';
    const auto& it = report.iterations;
    out << "iterations fixpoints=" << it.fixpoints << " iterations=" << it.iterations
        << " max_iterations=" << it.max_iterations << " non_monotone_steps=" << it.non_monotone_steps << '\n';
    for ( const auto& check : report.checks )
    {
        if ( !check.counterexample )
            continue;
        const auto& x = *check.counterexample;
        out << "counterexample " << x.check << " trial=" << x.trial << '\n';
        auto field = [ & ]( const char* name, const std::string& value ) {
            if ( !value.empty() )
                out << "counterexample." << name << ' ' << x.check << ' ' << one_line( value ) << '\n';
        };
        field( "state", x.state );
        field( "formula", x.formula );
        field( "other_formula", x.other_formula );
        field( "test", x.test );
        field( "expected", x.expected );
        field( "actual", x.actual );
        std::istringstream lines( x.lts );
        for ( std::string line; std::getline( lines, line ); )
            out << "counterexample.lts " << x.check << ' ' << line << '\n';
    }
    out << "result " << ( report.passed() ? "pass" : "fail" ) << '\n';
    return out.str();
}

std::string to_json( const TrialReport& report )
{
    using nlohmann::ordered_json;
    const auto& c = report.config;
    ordered_json root;
    root[ "config" ] = {
        { "seed", c.seed },
        { "trials", c.trials },
        { "max_states", c.max_states },
        { "alphabet_size", c.alphabet_size },
        { "max_formula_depth", c.max_formula_depth },
        { "max_test_depth", c.max_test_depth },
        { "tau_density", c.tau_density },
        { "divergence_bias", c.divergence_bias },
        { "guard_bias", c.guard_bias },
        { "mutate", report.mutated },
    };
    root[ "divergent_trials" ] = report.divergent_trials;
    root[ "checks" ] = ordered_json::array();
    for ( const auto& check : report.checks )
    {
        ordered_json entry = {
            { "name", check.name },
            { "trials", check.trials },
            { "cases", check.cases },
            { "skipped", check.skipped },
            { "failures", check.failures },
        };
        if ( check.counterexample )
        {
            const auto& x = *check.counterexample;
            entry[ "counterexample" ] = {
                { "trial", x.trial },     { "lts", x.lts },
                { "state", x.state },     { "formula", x.formula },
                { "other_formula", x.other_formula }, { "test", x.test },
                { "expected", x.expected }, { "actual", x.actual },
            };
        }
        else
            entry[ "counterexample" ] = nullptr;
        root[ "checks" ].push_back( std::move( entry ) );
    }
    const auto& it = report.iterations;
    root[ "iterations" ] = {
        { "fixpoints", it.fixpoints },
        { "iterations", it.iterations },
        { "max_iterations", it.max_iterations },
        { "non_monotone_steps", it.non_monotone_steps },
    };
    root[ "result" ] = report.passed() ? "pass" : "fail";
    return root.dump( 2 ) + "\n";
}

} // namespace hml

#include "hml/experiment.hpp"

#include "hml/error.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace hml
{

std::size_t ExperimentGraph::num_edges() const
{
    std::size_t n = 0;
    for ( const auto& out : _successors )
        n += out.size();
    return n;
}

std::string ExperimentGraph::describe( Index c ) const
{
    const auto& conf = _configs[ c ];
    return _process->state_name( conf.process ) + "|" + _test->state_name( conf.test );
}

ExperimentGraph parallel_compose( const Lts& process, const Lts& test, StateId p, StateId t )
{
    if ( process.has_omega() )
        throw domain_error( "process LTS '" + process.name() + "' contains omega transitions" );
    if ( p >= process.num_states() )
        throw domain_error( "unknown process state " + std::to_string( p ) );
    if ( t >= test.num_states() )
        throw domain_error( "unknown test state " + std::to_string( t ) );

    ExperimentGraph g;
    g._process = &process;
    g._test = &test;
    std::map< Configuration, ExperimentGraph::Index > index;
    std::deque< ExperimentGraph::Index > queue;

    auto intern = [ & ]( Configuration c ) {
        auto [ it, fresh ] = index.emplace( c, g._configs.size() );
        if ( fresh )
        {
            g._configs.push_back( c );
            g._successors.emplace_back();
            auto out = test.outgoing( c.test );
            g._success.push_back(
                std::any_of( out.begin(), out.end(), []( const Transition& tr ) { return tr.action.is_omega(); } ) );
            queue.push_back( it->second );
        }
        return it->second;
    };

    intern( { p, t } );
    while ( !queue.empty() )
    {
        auto c = queue.front();
        queue.pop_front();
        const auto conf = g._configs[ c ];
        std::vector< ExperimentGraph::Index > next;
        for ( const auto& pt : process.outgoing( conf.process ) )
        {
            if ( pt.action.is_tau() )
                next.push_back( intern( { pt.target, conf.test } ) );
            else
                for ( const auto& tt : test.outgoing( conf.test ) )
                    if ( tt.action == pt.action )
                        next.push_back( intern( { pt.target, tt.target } ) );
        }
        for ( const auto& tt : test.outgoing( conf.test ) )
            if ( tt.action.is_tau() )
                next.push_back( intern( { conf.process, tt.target } ) );
        std::sort( next.begin(), next.end() );
        next.erase( std::unique( next.begin(), next.end() ), next.end() );
        g._successors[ c ] = std::move( next );
    }
    return g;
}

bool may_satisfy( const ExperimentGraph& g )
{
    return may_witness( g ).has_value();
}

std::vector< bool > must_region( const ExperimentGraph& g )
{
    const auto n = g.size();
    std::vector< std::vector< ExperimentGraph::Index > > predecessors( n );
    std::vector< std::size_t > pending( n );
    for ( ExperimentGraph::Index c = 0; c < n; ++c )
    {
        pending[ c ] = g.successors( c ).size();
        for ( auto d : g.successors( c ) )
            predecessors[ d ].push_back( c );
    }

    std::vector< bool > in( n, false );
    std::vector< ExperimentGraph::Index > worklist;
    for ( ExperimentGraph::Index c = 0; c < n; ++c )
        if ( g.is_success( c ) )
        {
            in[ c ] = true;
            worklist.push_back( c );
        }
    while ( !worklist.empty() )
    {
        auto d = worklist.back();
        worklist.pop_back();
        for ( auto c : predecessors[ d ] )
        {
            if ( in[ c ] )
                continue;
            if ( --pending[ c ] == 0 )
            {
                in[ c ] = true;
                worklist.push_back( c );
            }
        }
    }
    return in;
}

bool must_satisfy( const ExperimentGraph& g )
{
    return must_region( g )[ ExperimentGraph::root() ];
}

std::optional< Computation > may_witness( const ExperimentGraph& g )
{
    const auto n = g.size();
    constexpr auto none = static_cast< ExperimentGraph::Index >( -1 );
    std::vector< ExperimentGraph::Index > parent( n, none );
    std::vector< bool > seen( n, false );
    std::deque< ExperimentGraph::Index > queue{ ExperimentGraph::root() };
    seen[ ExperimentGraph::root() ] = true;
    while ( !queue.empty() )
    {
        auto c = queue.front();
        queue.pop_front();
        if ( g.is_success( c ) )
        {
            Computation result;
            for ( auto at = c; at != none; at = parent[ at ] )
                result.path.push_back( at );
            std::reverse( result.path.begin(), result.path.end() );
            return result;
        }
        for ( auto d : g.successors( c ) )
            if ( !seen[ d ] )
            {
                seen[ d ] = true;
                parent[ d ] = c;
                queue.push_back( d );
            }
    }
    return std::nullopt;
}

std::optional< Computation > must_counterexample( const ExperimentGraph& g )
{
    const auto region = must_region( g );
    if ( region[ ExperimentGraph::root() ] )
        return std::nullopt;

    // Outside M every configuration is unsuccessful and, unless it is a
    // deadlock, has a successor outside M.
    Computation result;
    std::map< ExperimentGraph::Index, std::size_t > position;
    auto c = ExperimentGraph::root();
    while ( true )
    {
        position.emplace( c, result.path.size() );
        result.path.push_back( c );
        const auto& next = g.successors( c );
        auto it = std::find_if( next.begin(), next.end(), [ & ]( auto d ) { return !region[ d ]; } );
        if ( it == next.end() )
        {
            if ( !next.empty() )
                throw invariant_error( "must region is not closed at " + g.describe( c ) );
            return result;
        }
        if ( auto seen = position.find( *it ); seen != position.end() )
        {
            result.loop_start = seen->second;
            return result;
        }
        c = *it;
    }
}

std::string format_computation( const ExperimentGraph& g, const Computation& c )
{
    std::ostringstream out;
    for ( auto index : c.path )
        out << g.describe( index ) << '\n';
    if ( c.loop_start )
        out << "loop " << *c.loop_start << '\n';
    return out.str();
}

UnfoldLawCheck must_unfold_law( const Lts& process, StateId p, const Lts& test, StateId recursive, StateId unfolded )
{
    UnfoldLawCheck check;
    check.converges = process.converges( p );
    check.must_recursive = must_satisfy( parallel_compose( process, test, p, recursive ) );
    check.must_unfolded = must_satisfy( parallel_compose( process, test, p, unfolded ) );
    return check;
}

} // namespace hml

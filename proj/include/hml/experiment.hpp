#pragma once

#include "hml/lts.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace hml
{

// A configuration p | t of an experiment.
struct Configuration
{
    StateId process;
    StateId test;

    auto operator<=>( const Configuration& ) const = default;
};

// The reachable part of the experiment p | t. Every edge is a τ-step of the
// composition: a τ of either side, or a synchronisation on a shared visible
// action. ω-transitions of the test are never taken; a configuration is
// successful when its test state offers ω.
class ExperimentGraph
{
public:
    using Index = std::size_t;

    const Lts& process() const { return *_process; }
    const Lts& test() const { return *_test; }

    std::size_t size() const { return _configs.size(); }
    static constexpr Index root() { return 0; }
    const Configuration& config( Index c ) const { return _configs[ c ]; }
    // Sorted, without duplicates.
    const std::vector< Index >& successors( Index c ) const { return _successors[ c ]; }
    bool is_success( Index c ) const { return _success[ c ]; }
    std::size_t num_edges() const;

    // `p|t` with the state names of both LTSs.
    std::string describe( Index c ) const;

private:
    friend ExperimentGraph parallel_compose( const Lts&, const Lts&, StateId, StateId );

    const Lts* _process = nullptr;
    const Lts* _test = nullptr;
    std::vector< Configuration > _configs;
    std::vector< std::vector< Index > > _successors;
    std::vector< bool > _success;
};

// Explores the configurations reachable from p | t breadth first (root is
// index 0). Both LTSs must outlive the graph. Throws domain_error for
// unknown states and when the process has ω-transitions.
ExperimentGraph parallel_compose( const Lts& process, const Lts& test, StateId p, StateId t );

// A successful configuration is reachable from the root.
bool may_satisfy( const ExperimentGraph& g );
// Every maximal computation from the root visits a successful configuration.
bool must_satisfy( const ExperimentGraph& g );
// The least set M containing the successful configurations and every
// configuration with at least one successor whose successors all lie in M.
std::vector< bool > must_region( const ExperimentGraph& g );

// A computation, as configuration indices from the root. For an infinite
// computation `loop_start` is the index into `path` where the cycle closes.
struct Computation
{
    std::vector< ExperimentGraph::Index > path;
    std::optional< std::size_t > loop_start;
};

// Shortest computation prefix ending in a successful configuration.
std::optional< Computation > may_witness( const ExperimentGraph& g );
// An unsuccessful maximal computation: a path ending in a deadlock, or a
// lasso, through configurations none of which is successful.
std::optional< Computation > must_counterexample( const ExperimentGraph& g );

// One configuration per line; a lasso ends with `loop <k>` naming the
// position where the cycle re-enters.
std::string format_computation( const ExperimentGraph& g, const Computation& c );

// p must μX.t implies p must t{μX.t/X}, and the converse when p⇓. The
// tests are given as states of one test LTS.
struct UnfoldLawCheck
{
    bool converges = false;
    bool must_recursive = false;
    bool must_unfolded = false;

    bool forward_holds() const { return !must_recursive || must_unfolded; }
    bool converse_holds() const { return !converges || !must_unfolded || must_recursive; }
    bool holds() const { return forward_holds() && converse_holds(); }
};

UnfoldLawCheck must_unfold_law( const Lts& process, StateId p, const Lts& test, StateId recursive,
                                StateId unfolded );

} // namespace hml

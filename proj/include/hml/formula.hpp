#pragma once

#include "hml/action.hpp"

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace hml
{

enum class formula_kind
{
    tt,
    ff,
    var,
    acc,
    disj,
    conj,
    diamond,
    box,
    min,
    max,
};

struct FormulaNode;

// Immutable recHML syntax tree with shared subterms. Copies are cheap
// (reference counted); equality is structural and sensitive to binder names,
// see alpha_equivalent() for equality up to renaming.
class Formula
{
public:
    static Formula tt();
    static Formula ff();
    static Formula var( std::string name );
    // Sorted and deduplicated; every name must be a visible action.
    static Formula acc( std::vector< std::string > actions );
    static Formula disj( Formula left, Formula right );
    static Formula conj( Formula left, Formula right );
    // `alpha` must be τ or visible.
    static Formula diamond( Action alpha, Formula body );
    static Formula box( Action alpha, Formula body );
    static Formula min( std::string var, Formula body );
    static Formula max( std::string var, Formula body );

    formula_kind kind() const;
    bool is_fixpoint() const { return kind() == formula_kind::min || kind() == formula_kind::max; }
    bool is_modality() const { return kind() == formula_kind::diamond || kind() == formula_kind::box; }
    bool is_binary() const { return kind() == formula_kind::disj || kind() == formula_kind::conj; }

    // Variable name (var) or bound variable (min, max).
    const std::string& name() const;
    const std::vector< std::string >& actions() const;
    const Action& action() const;
    const Formula& left() const;
    const Formula& right() const;
    // Body of a modality or fixpoint.
    const Formula& body() const;

    // Sorted.
    const std::vector< std::string >& free_vars() const;
    bool is_closed() const { return free_vars().empty(); }
    bool has_free( std::string_view var ) const;
    std::size_t depth() const;

    // Identity of the shared node; stable for the lifetime of any copy.
    const FormulaNode* node() const { return _node.get(); }
    std::size_t hash() const;

    friend bool operator==( const Formula& a, const Formula& b );

private:
    explicit Formula( std::shared_ptr< const FormulaNode > node ) : _node{ std::move( node ) } {}
    static Formula make( FormulaNode node );

    std::shared_ptr< const FormulaNode > _node;
};

struct FormulaNode
{
    formula_kind kind;
    std::string name;
    std::vector< std::string > actions;
    Action action = Action::tau();
    std::vector< Formula > children;
    std::vector< std::string > free;
    std::size_t depth = 1;
    std::size_t hash = 0;
};

// Capture-avoiding φ{ψ/X}. Bound variables of φ that occur free in ψ are
// renamed when the substitution would otherwise pass under them.
Formula substitute( const Formula& phi, const std::string& var, const Formula& psi );

// Equality up to consistent renaming of bound variables.
bool alpha_equivalent( const Formula& a, const Formula& b );

// Left-nested conjunction / disjunction; the empty list gives tt / ff.
Formula conj_all( const std::vector< Formula >& parts );
Formula disj_all( const std::vector< Formula >& parts );

// First name of the form `base`, `base1`, `base2`, ... that is not in `avoid`
// and is not the reserved word `Acc`.
std::string fresh_variable( const std::string& base, const std::set< std::string >& avoid );

} // namespace hml

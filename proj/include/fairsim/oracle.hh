#ifndef FAIRSIM_ORACLE_HH
#define FAIRSIM_ORACLE_HH

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fairsim/nbta.hh"
#include "fairsim/pbwa.hh"

namespace fairsim {

// Ultimately periodic word u.v^omega; the loop is nonempty.
struct LassoWord {
    std::vector<SymbolId> stem;
    std::vector<SymbolId> loop;
};

// Finite tree of bounded depth: every node carries a symbol; nodes are
// either fully expanded (exactly arity children) or cut at the depth
// bound (no children). A node with a 0-ary symbol is a genuine leaf.
struct PrefixTree {
    SymbolId symbol;
    std::vector<PrefixTree> children;
};

std::string format_lasso(const Nbta& aut, const LassoWord& w);
std::string format_prefix_tree(const Nbta& aut, const PrefixTree& t);

// u.v^omega membership for a word automaton presented as a unary NBTA:
// product-graph cycle search through an accepting state, which pumps the
// loop up to |X| times by pigeonhole. Throws on non-unary symbols.
bool nbw_lasso_member(const Nbta& aut, const LassoWord& w);

// Exhaustive lasso sweep: first w with |stem| <= stem_bound and
// 1 <= |loop| <= loop_bound accepted by X but not by Y, in length-then-
// lexicographic order; nullopt when none exists within the bounds.
std::optional<LassoWord> nbw_inclusion_bounded(const Nbta& x, const Nbta& y,
                                               std::uint32_t stem_bound,
                                               std::uint32_t loop_bound);

// Is t a depth-bounded prefix of some tree in L(aut)? Decided bottom-up
// against per-state residual nonemptiness.
bool prefix_realizable(const Nbta& aut, const PrefixTree& t);

// First depth-k prefix realizable in X but not in Y; a necessary (not
// sufficient) condition for language inclusion. The sweep enumerates the
// images of the realizable-state-set pairs rather than raw trees, so
// depth 4 over binary alphabets stays cheap.
std::optional<PrefixTree> tree_prefix_inclusion(const Nbta& x, const Nbta& y, std::uint32_t depth);

// First word w with |w| <= maxlen and L(X)(Cyl(w)) > L(Y)(Cyl(w)), exact
// comparison, length-then-lexicographic order.
std::optional<Word> cylinder_inclusion(const Pbwa& x, const Pbwa& y, std::uint32_t maxlen);

} // namespace fairsim

#endif

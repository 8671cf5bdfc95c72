#ifndef FAIRSIM_NBTA_HH
#define FAIRSIM_NBTA_HH

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fairsim/bitset.hh"
#include "fairsim/eqsys.hh"
#include "fairsim/error.hh"

namespace fairsim {

using StateId = std::uint32_t;
using SymbolId = std::uint32_t;

// Default bound on symbol arities; keeps the tuple spaces behind the step
// operators enumerable. Overridable per call site and through the CLI's
// environment variable.
constexpr std::uint32_t kDefaultArityCap = 3;
std::uint32_t arity_cap_from_env();

struct RankedAlphabet {
    std::vector<std::string> symbols;
    std::vector<std::uint32_t> arities;

    std::size_t size() const { return symbols.size(); }
    std::uint32_t arity(SymbolId s) const { return arities[s]; }
    std::optional<SymbolId> find(const std::string& name) const;
    bool operator==(const RankedAlphabet& o) const {
        return symbols == o.symbols && arities == o.arities;
    }
};

struct Transition {
    SymbolId symbol;
    std::vector<StateId> children;
    bool operator==(const Transition& o) const {
        return symbol == o.symbol && children == o.children;
    }
};

// Nondeterministic Buechi tree automaton. Immutable after construction;
// construction validates arity consistency and state ranges.
class Nbta {
public:
    Nbta(RankedAlphabet alphabet, std::vector<std::string> state_names,
         std::vector<std::vector<Transition>> delta, std::vector<bool> initial,
         std::vector<bool> accepting, std::uint32_t arity_cap = arity_cap_from_env());

    const RankedAlphabet& alphabet() const { return alphabet_; }
    std::size_t num_states() const { return state_names_.size(); }
    const std::string& state_name(StateId x) const { return state_names_[x]; }
    std::optional<StateId> find_state(const std::string& name) const;

    const std::vector<Transition>& delta(StateId x) const { return delta_[x]; }
    bool initial(StateId x) const { return initial_[x]; }
    bool accepting(StateId x) const { return accepting_[x]; }
    std::vector<StateId> initial_states() const;

    bool unary() const; // every symbol has arity exactly 1

private:
    RankedAlphabet alphabet_;
    std::vector<std::string> state_names_;
    std::vector<std::vector<Transition>> delta_;
    std::vector<bool> initial_;
    std::vector<bool> accepting_;
};

// Enumeration of the coproduct of state tuples (sigma, x_1..x_{|sigma|})
// over all symbols; tuple ids index the step-set bitsets below.
class TupleSpace {
public:
    TupleSpace() = default;
    TupleSpace(const RankedAlphabet& alphabet, std::size_t num_states);

    std::size_t size() const { return tuples_.size(); }
    const Transition& tuple(std::size_t id) const { return tuples_[id]; }
    std::size_t index_of(const Transition& t) const; // tuple must exist

private:
    std::size_t offset_of(SymbolId s) const { return offsets_[s]; }
    std::vector<Transition> tuples_;
    std::vector<std::size_t> offsets_;
    std::size_t num_states_ = 0;
};

// Subset of X x Y as a bitset over pair indices x*|Y|+y.
class Relation {
public:
    Relation() = default;
    Relation(std::size_t nx, std::size_t ny) : nx_(nx), ny_(ny), bits_(nx * ny) {}
    static Relation full(std::size_t nx, std::size_t ny);

    std::size_t nx() const { return nx_; }
    std::size_t ny() const { return ny_; }
    bool test(StateId x, StateId y) const { return bits_.test(x * ny_ + y); }
    void set(StateId x, StateId y) { bits_.set(x * ny_ + y); }
    void reset(StateId x, StateId y) { bits_.reset(x * ny_ + y); }
    std::size_t count() const { return bits_.count(); }
    bool subset_of(const Relation& o) const { return bits_.subset_of(o.bits_); }
    Relation& operator|=(const Relation& o) { bits_ |= o.bits_; return *this; }
    bool operator==(const Relation& o) const {
        return nx_ == o.nx_ && ny_ == o.ny_ && bits_ == o.bits_;
    }
    std::vector<std::pair<StateId, StateId>> pairs() const;

private:
    std::size_t nx_ = 0, ny_ = 0;
    Bitset bits_;
};

// Step sets of the three operators in the fair-simulation system:
//   StepSetFxY  - subset of (coprod_sigma X^|sigma|) x Y
//   StepSetFxFy - subset of (coprod_sigma X^|sigma|) x (coprod_sigma Y^|sigma|)
// Both carry their domain sizes so the operators can type-check inputs.
struct StepSetFxY {
    std::size_t nfx = 0, ny = 0;
    Bitset bits;
    StepSetFxY() = default;
    StepSetFxY(std::size_t nfx, std::size_t ny) : nfx(nfx), ny(ny), bits(nfx * ny) {}
    static StepSetFxY full(std::size_t nfx, std::size_t ny);
    bool test(std::size_t a, StateId y) const { return bits.test(a * ny + y); }
    void set(std::size_t a, StateId y) { bits.set(a * ny + y); }
};

struct StepSetFxFy {
    std::size_t nfx = 0, nfy = 0;
    Bitset bits;
    StepSetFxFy() = default;
    StepSetFxFy(std::size_t nfx, std::size_t nfy) : nfx(nfx), nfy(nfy), bits(nfx * nfy) {}
    static StepSetFxFy full(std::size_t nfx, std::size_t nfy);
    bool test(std::size_t a, std::size_t b) const { return bits.test(a * nfy + b); }
    void set(std::size_t a, std::size_t b) { bits.set(a * nfy + b); }
};

// Accepting-partition block of a state: 1 for non-accepting, 2 for
// accepting, matching the X_1/X_2 and Y_1/Y_2 split.
inline int part_block(const Nbta& aut, StateId x) { return aut.accepting(x) ? 2 : 1; }

// Binds a challenger X and a simulator Y over a shared alphabet and owns
// the tuple spaces of both. All step operators and the fair-simulation
// system are built against this context; the automata must outlive it.
class SimContext {
public:
    SimContext(const Nbta& x, const Nbta& y);

    const Nbta& x() const { return *x_; }
    const Nbta& y() const { return *y_; }
    const TupleSpace& tx() const { return tx_; }
    const TupleSpace& ty() const { return ty_; }

    // {(x,y) in X_i x Y | every transition tuple a of x has (a,y) in S}
    Relation box(int block_i, const StepSetFxY& s) const;
    // {(a,y) in FX x Y_j | some transition tuple b of y has (a,b) in T}
    StepSetFxY diamond(int block_j, const StepSetFxFy& t) const;
    // pairs of equal-symbol tuples whose children are pointwise U-related
    StepSetFxFy wedge(const Relation& u) const;

    // Four-variable system with signs (nu, mu, nu, nu); variable k covers
    // the block X_{bi(k)} x Y_{bj(k)} with (bi,bj) =
    // (1,1),(2,1),(1,2),(2,2). The right-hand sides reference this
    // context, which must stay alive while the system is in use.
    eqsys::EquationalSystem<Bitset> fair_sim_system() const;

    Relation blocks_to_relation(const eqsys::Solution<Bitset>& blocks) const;
    Bitset relation_to_block(const Relation& r, int k) const;
    std::size_t block_size(int k) const { return block_pairs_[k].size(); }
    const std::vector<std::pair<StateId, StateId>>& block_pairs(int k) const {
        return block_pairs_[k];
    }

private:
    const Nbta* x_;
    const Nbta* y_;
    TupleSpace tx_, ty_;
    // per block: the (x,y) pairs it covers, in (x,y)-lexicographic order
    std::vector<std::pair<StateId, StateId>> block_pairs_[4];
    std::vector<std::uint32_t> pair_block_;  // x*|Y|+y -> block 0..3
    std::vector<std::uint32_t> pair_index_;  // x*|Y|+y -> index inside block
};

struct NdCheckResult {
    bool holds = false;
    // identifier of the violated condition; empty when the check holds
    std::string violated;
    // condition 1: the uncovered initial challenger state
    std::optional<StateId> witness_x;
    // condition 2: a pair of R outside the solution
    std::optional<std::pair<StateId, StateId>> witness_pair;
};

// Solution of the fair-simulation system as one relation over X x Y.
Relation fair_sim_solution(const Nbta& x, const Nbta& y);

// R is a fair simulation iff every initial challenger state is covered by
// an initial simulator state and R is below the system's solution.
NdCheckResult check_fair_simulation(const Nbta& x, const Nbta& y, const Relation& r);

// The solution itself when it satisfies the initial-state condition; any
// fair simulation is a subset of the returned relation.
std::optional<Relation> largest_fair_simulation(const Nbta& x, const Nbta& y);

} // namespace fairsim

#endif

#ifndef FAIRSIM_TESTS_SUPPORT_HH
#define FAIRSIM_TESTS_SUPPORT_HH

// Shared fixtures (the running examples of the toolkit) and brute-force
// oracles that stay independent of the implementation paths they check.

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "fairsim/matsim.hh"
#include "fairsim/nbta.hh"
#include "fairsim/oracle.hh"
#include "fairsim/pbwa.hh"

namespace fairsim::tests {

inline std::string fixture_path(const std::string& name) {
    return std::string(FAIRSIM_FIXTURE_DIR) + "/" + name;
}

// Two-state tree automaton over binary a/b where both states loop: a to
// the non-accepting pair, b to the accepting pair. Language: binary trees
// with b infinitely often on every branch.
inline Nbta two_state_tree_automaton() {
    RankedAlphabet alpha{{"a", "b"}, {2, 2}};
    std::vector<std::vector<Transition>> delta(2);
    for (StateId x = 0; x < 2; ++x) {
        delta[x].push_back(Transition{0, {0, 0}});
        delta[x].push_back(Transition{1, {1, 1}});
    }
    return Nbta(alpha, {"x1", "x2"}, delta, {true, false}, {false, true});
}

// Cyclic three-state simulator: each y_i answers a by (y_i, y_{i+1}) and
// b by (y_{i+1}, y_{i+1}); y0 accepting and initial. Simulates the
// two-state automaton with the full relation.
inline Nbta cyclic_simulator(std::uint32_t n = 3) {
    RankedAlphabet alpha{{"a", "b"}, {2, 2}};
    std::vector<std::string> names;
    std::vector<std::vector<Transition>> delta(n);
    std::vector<bool> initial(n, false), accepting(n, false);
    for (StateId i = 0; i < n; ++i) {
        names.push_back("y" + std::to_string(i));
        const StateId next = (i + 1) % n;
        delta[i].push_back(Transition{0, {i, next}});
        delta[i].push_back(Transition{1, {next, next}});
    }
    initial[0] = true;
    accepting[0] = true;
    return Nbta(alpha, names, delta, initial, accepting);
}

// Five-state substochastic word automaton: a-loops everywhere, one b-edge
// with probability 1/6 into the stochastic block {x4,x5}; x2 leaks 1/6.
inline Pbwa five_state_word_automaton() {
    RMatrix ma(5, 5), mb(5, 5);
    ma.at(0, 0) = Rational(1, 2);
    ma.at(0, 1) = Rational(1, 3);
    ma.at(1, 1) = Rational(1, 2);
    ma.at(1, 2) = Rational(1, 3);
    ma.at(2, 1) = Rational(1, 2);
    ma.at(2, 2) = Rational(1, 2);
    ma.at(3, 3) = Rational(1, 2);
    ma.at(3, 4) = Rational(1, 2);
    ma.at(4, 3) = Rational(1, 2);
    ma.at(4, 4) = Rational(1, 2);
    mb.at(0, 3) = Rational(1, 6);
    RVec init(5);
    init[0] = Rational::one();
    return Pbwa({"a", "b"}, {"x1", "x2", "x3", "x4", "x5"}, {ma, mb}, init,
                {false, false, true, false, true});
}

// Two-state alternating challenger: mass 1/2 on each state, a flips
// between them deterministically; x2 accepting.
inline Pbwa alternating_challenger() {
    RMatrix ma(2, 2);
    ma.at(0, 1) = Rational::one();
    ma.at(1, 0) = Rational::one();
    RVec init{Rational(1, 2), Rational(1, 2)};
    return Pbwa({"a"}, {"x1", "x2"}, {ma}, init, {false, true});
}

// Two-state simulator: y1 keeps emitting a and falls into the accepting
// absorbing y2 with probability 1/2 per step.
inline Pbwa absorbing_simulator() {
    RMatrix ma(2, 2);
    ma.at(0, 0) = Rational(1, 2);
    ma.at(0, 1) = Rational(1, 2);
    ma.at(1, 1) = Rational::one();
    RVec init{Rational::one(), Rational()};
    return Pbwa({"a"}, {"y1", "y2"}, {ma}, init, {false, true});
}

// All-half witness between the two automata above.
inline MatrixWitness all_half_witness() {
    RMatrix a(2, 2);
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) a.at(r, c) = Rational(1, 2);
    return MatrixWitness{a};
}

// Four-state challenger split into two deterministic accepting lanes,
// entered with mass 1/2 each; the matching simulator is
// absorbing_simulator-shaped but reaches y2 after one step.
inline Pbwa split_lane_challenger() {
    // states: x1 (non-acc), x21, x22, x23 (accepting)
    RMatrix ma(4, 4);
    ma.at(0, 1) = Rational::one();  // x1 -> x21
    ma.at(1, 1) = Rational::one();  // x21 self loop
    ma.at(2, 3) = Rational::one();  // x22 -> x23
    ma.at(3, 3) = Rational::one();  // x23 self loop
    RVec init{Rational(1, 2), Rational(), Rational(1, 2), Rational()};
    return Pbwa({"a"}, {"x1", "x21", "x22", "x23"}, {ma}, init, {false, true, true, true});
}

inline Pbwa prompt_simulator() {
    RMatrix ma(2, 2);
    ma.at(0, 1) = Rational::one();
    ma.at(1, 1) = Rational::one();
    RVec init{Rational::one(), Rational()};
    return Pbwa({"a"}, {"y1", "y2"}, {ma}, init, {false, true});
}

// Kleisli arrow of the split-lane example as a matrix: y1 covers x1 and
// x22, y2 covers x21 and x23, each with weight 1/2.
inline MatrixWitness split_lane_witness() {
    RMatrix a(2, 4);
    a.at(0, 0) = Rational(1, 2);
    a.at(0, 2) = Rational(1, 2);
    a.at(1, 1) = Rational(1, 2);
    a.at(1, 3) = Rational(1, 2);
    return MatrixWitness{a};
}

// Brute-force lasso membership via explicit unrolling: u.v^omega is
// accepted iff some state q is reachable after u followed by at most |X|
// copies of v, and q lies on a v-block cycle that visits an accepting
// state. Cycles are found by flagged set-reachability over unrolled
// copies of v, independent of the product-graph implementation.
inline bool lasso_member_brute(const Nbta& aut, const LassoWord& w) {
    const std::size_t n = aut.num_states();
    auto step = [&](const std::set<std::pair<StateId, bool>>& cur, SymbolId sym) {
        std::set<std::pair<StateId, bool>> next;
        for (auto [x, flag] : cur)
            for (const Transition& t : aut.delta(x))
                if (t.symbol == sym)
                    next.emplace(t.children[0], flag || aut.accepting(t.children[0]));
        return next;
    };

    // plain reachable sets after the stem plus i loop copies
    std::set<StateId> frontier;
    for (StateId x = 0; x < n; ++x)
        if (aut.initial(x)) frontier.insert(x);
    for (SymbolId s : w.stem) {
        std::set<StateId> next;
        for (StateId x : frontier)
            for (const Transition& t : aut.delta(x))
                if (t.symbol == s) next.insert(t.children[0]);
        frontier = std::move(next);
    }

    for (std::size_t i = 0; i <= n; ++i) {
        for (StateId q : frontier) {
            // does some v-block cycle from q revisit q with an accepting
            // visit on the way (q itself counts)?
            std::set<std::pair<StateId, bool>> cur{{q, aut.accepting(q)}};
            for (std::size_t j = 1; j <= 2 * n + 2; ++j) {
                for (SymbolId s : w.loop) cur = step(cur, s);
                if (cur.count({q, true})) return true;
            }
        }
        // advance the frontier by one loop copy
        std::set<StateId> advanced = frontier;
        for (SymbolId s : w.loop) {
            std::set<StateId> stepped;
            for (StateId x : advanced)
                for (const Transition& t : aut.delta(x))
                    if (t.symbol == s) stepped.insert(t.children[0]);
            advanced = std::move(stepped);
        }
        frontier = std::move(advanced);
    }
    return false;
}

} // namespace fairsim::tests

#endif

#include <doctest.h>

#include <map>
#include <set>

#include "fairsim/random_suite.hh"
#include "fairsim/simgame.hh"
#include "support.hh"

using namespace fairsim;
using tests::cyclic_simulator;
using tests::two_state_tree_automaton;

TEST_CASE("a stuck challenger wins for Even from the start") {
    RankedAlphabet alpha{{"a"}, {1}};
    std::vector<std::vector<Transition>> dx(1);
    Nbta x(alpha, {"x"}, dx, {true}, {false});
    std::vector<std::vector<Transition>> dy(1);
    dy[0].push_back(Transition{0, {0}});
    Nbta y(alpha, {"y"}, dy, {true}, {false});
    SimulationGame game = build_simulation_game(x, y);
    auto solved = solve_parity(game.game);
    CHECK(solved.even_wins[game.start]);
}

TEST_CASE("Even wins the running tree pair from the start") {
    SimulationGame game = build_simulation_game(two_state_tree_automaton(), cyclic_simulator());
    auto solved = solve_parity(game.game);
    CHECK(solved.even_wins[game.start]);
    CHECK(validate_progress_measure(game.game, solved.measure));
}

namespace {

// Independent recount of the reachable positions per the game table,
// walking the table rows directly over sets of encoded positions.
std::size_t recount_positions(const Nbta& x, const Nbta& y) {
    using Pos = std::vector<std::uint32_t>; // same shape the builder uses
    std::set<Pos> seen;
    std::vector<Pos> work{{0}};
    seen.insert({0});
    TupleSpace tx(x.alphabet(), x.num_states());
    auto push = [&](Pos p) {
        if (seen.insert(p).second) work.push_back(p);
    };
    while (!work.empty()) {
        Pos p = work.back();
        work.pop_back();
        switch (p[0]) {
            case 0:
                for (StateId s : x.initial_states()) push({1, s});
                break;
            case 1:
                for (StateId t : y.initial_states()) push({2, p[1], t});
                break;
            case 2:
                for (const Transition& t : x.delta(p[1]))
                    push({3, static_cast<std::uint32_t>(tx.index_of(t)), p[2]});
                break;
            case 3: {
                const Transition& a = tx.tuple(p[1]);
                for (const Transition& b : y.delta(p[2])) {
                    if (b.symbol != a.symbol) continue;
                    Pos vec{4};
                    for (std::size_t i = 0; i < a.children.size(); ++i) {
                        vec.push_back(a.children[i]);
                        vec.push_back(b.children[i]);
                    }
                    push(vec);
                }
                break;
            }
            default:
                for (std::size_t i = 1; i + 1 < p.size(); i += 2) push({2, p[i], p[i + 1]});
        }
    }
    return seen.size();
}

} // namespace

TEST_CASE("materialized positions match an independent recount") {
    Nbta x = two_state_tree_automaton();
    Nbta y = cyclic_simulator();
    SimulationGame game = build_simulation_game(x, y);
    CHECK(game.game.size() == recount_positions(x, y));
}

TEST_CASE("game and fixpoint verdicts agree on random pairs") {
    Rng rng(99);
    SuiteLimits limits;
    for (int round = 0; round < 40; ++round) {
        auto [x, y] = random_nbta_pair(rng, limits);
        auto fixpoint = largest_fair_simulation(x, y);
        SimulationGame game = build_simulation_game(x, y);
        auto solved = solve_parity(game.game);
        INFO("round ", round);
        CHECK(fixpoint.has_value() == solved.even_wins[game.start]);
    }
}

TEST_CASE("nonemptiness of the running automaton") {
    auto res = nonemptiness_game(two_state_tree_automaton());
    CHECK(res.nonempty[0]);
    CHECK(res.nonempty[1]);
}

TEST_CASE("states without transitions have empty languages") {
    RankedAlphabet alpha{{"a"}, {2}};
    std::vector<std::vector<Transition>> delta(2);
    delta[0].push_back(Transition{0, {1, 1}});
    Nbta x(alpha, {"p", "dead"}, delta, {true, false}, {true, true});
    auto res = nonemptiness_game(x);
    CHECK(!res.nonempty[0]); // all runs hit the dead child
    CHECK(!res.nonempty[1]);
}

TEST_CASE("zero-ary symbols terminate branches acceptingly") {
    RankedAlphabet alpha{{"c"}, {0}};
    std::vector<std::vector<Transition>> delta(1);
    delta[0].push_back(Transition{0, {}});
    Nbta x(alpha, {"leaf"}, delta, {true}, {false});
    auto res = nonemptiness_game(x);
    CHECK(res.nonempty[0]);
}

TEST_CASE("empty accepting set kills infinite-only languages") {
    RankedAlphabet alpha{{"a"}, {1}};
    std::vector<std::vector<Transition>> delta(1);
    delta[0].push_back(Transition{0, {0}});
    Nbta x(alpha, {"loop"}, delta, {true}, {false});
    auto res = nonemptiness_game(x);
    CHECK(!res.nonempty[0]);
}

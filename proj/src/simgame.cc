#include "fairsim/simgame.hh"

#include <map>
#include <sstream>

namespace fairsim {

namespace {

// Canonical position keys for the simulation game. Layout:
//   {0}                          star
//   {1, x}                       challenger state
//   {2, x, y}                    state pair
//   {3, tuple_id, y}             (a, y) with a a delta_X tuple
//   {4, x1, y1, ..., xk, yk}     pair vector
using Key = std::vector<std::uint32_t>;

struct Builder {
    const Nbta& x;
    const Nbta& y;
    const TupleSpace tx;
    ParityGame game;
    std::map<Key, std::uint32_t> ids;
    std::vector<Key> pending;

    Builder(const Nbta& x, const Nbta& y) : x(x), y(y), tx(x.alphabet(), x.num_states()) {}

    std::uint32_t position(const Key& key) {
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        auto id = static_cast<std::uint32_t>(game.owner.size());
        ids.emplace(key, id);
        game.owner.push_back(owner_of(key));
        game.priority.push_back(priority_of(key));
        game.moves.emplace_back();
        game.labels.push_back(label_of(key));
        pending.push_back(key);
        return id;
    }

    Player owner_of(const Key& k) const {
        switch (k[0]) {
            case 1: case 3: return Player::Even;
            default: return Player::Odd;
        }
    }

    std::uint32_t priority_of(const Key& k) const {
        if (k[0] != 2) return 0;
        const StateId xs = k[1], ys = k[2];
        if (y.accepting(ys)) return 2;
        return x.accepting(xs) ? 1 : 0;
    }

    std::string label_of(const Key& k) const {
        std::ostringstream s;
        switch (k[0]) {
            case 0: s << "*"; break;
            case 1: s << x.state_name(k[1]); break;
            case 2: s << '(' << x.state_name(k[1]) << ',' << y.state_name(k[2]) << ')'; break;
            case 3: {
                const Transition& t = tx.tuple(k[1]);
                s << '(' << x.alphabet().symbols[t.symbol];
                for (StateId c : t.children) s << ' ' << x.state_name(c);
                s << "|" << y.state_name(k[2]) << ')';
                break;
            }
            default: {
                s << '[';
                for (std::size_t i = 1; i + 1 < k.size(); i += 2) {
                    if (i > 1) s << ' ';
                    s << '(' << x.state_name(k[i]) << ',' << y.state_name(k[i + 1]) << ')';
                }
                s << ']';
            }
        }
        return s.str();
    }

    std::vector<std::uint32_t> successors(const Key& k) {
        std::vector<std::uint32_t> succ;
        switch (k[0]) {
            case 0:
                for (StateId xs : x.initial_states()) succ.push_back(position({1, xs}));
                break;
            case 1:
                for (StateId ys : y.initial_states()) succ.push_back(position({2, k[1], ys}));
                break;
            case 2:
                for (const Transition& t : x.delta(k[1]))
                    succ.push_back(position({3, static_cast<std::uint32_t>(tx.index_of(t)), k[2]}));
                break;
            case 3: {
                const Transition& a = tx.tuple(k[1]);
                for (const Transition& b : y.delta(k[2])) {
                    if (b.symbol != a.symbol) continue;
                    Key vec{4};
                    for (std::size_t i = 0; i < a.children.size(); ++i) {
                        vec.push_back(a.children[i]);
                        vec.push_back(b.children[i]);
                    }
                    succ.push_back(position(vec));
                }
                break;
            }
            default:
                for (std::size_t i = 1; i + 1 < k.size(); i += 2)
                    succ.push_back(position({2, k[i], k[i + 1]}));
        }
        return succ;
    }
};

} // namespace

SimulationGame build_simulation_game(const Nbta& x, const Nbta& y) {
    if (!(x.alphabet() == y.alphabet()))
        throw ValidationError("simulation game requires the same ranked alphabet on both sides");
    Builder b(x, y);
    SimulationGame result;
    result.start = b.position({0});
    while (!b.pending.empty()) {
        Key key = std::move(b.pending.back());
        b.pending.pop_back();
        const std::uint32_t id = b.ids.at(key);
        b.game.moves[id] = b.successors(key);
    }
    result.game = std::move(b.game);
    return result;
}

NonemptinessResult nonemptiness_game(const Nbta& x) {
    NonemptinessResult result;
    ParityGame& g = result.game;
    const std::size_t n = x.num_states();

    // state positions first, then one position per transition tuple use
    result.state_position.resize(n);
    for (StateId s = 0; s < n; ++s) {
        result.state_position[s] = static_cast<std::uint32_t>(g.owner.size());
        g.owner.push_back(Player::Even);
        g.priority.push_back(x.accepting(s) ? 2u : 1u);
        g.moves.emplace_back();
        g.labels.push_back(x.state_name(s));
    }
    for (StateId s = 0; s < n; ++s) {
        for (const Transition& t : x.delta(s)) {
            auto id = static_cast<std::uint32_t>(g.owner.size());
            g.owner.push_back(Player::Odd);
            g.priority.push_back(0);
            g.moves.emplace_back();
            std::ostringstream label;
            label << x.alphabet().symbols[t.symbol];
            for (StateId c : t.children) {
                g.moves[id].push_back(result.state_position[c]);
                label << ' ' << x.state_name(c);
            }
            g.labels.push_back(label.str());
            g.moves[result.state_position[s]].push_back(id);
        }
    }

    auto solved = solve_parity(g);
    result.nonempty.resize(n);
    for (StateId s = 0; s < n; ++s) result.nonempty[s] = solved.even_wins[result.state_position[s]];
    return result;
}

} // namespace fairsim

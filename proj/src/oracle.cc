#include "fairsim/oracle.hh"

#include <algorithm>
#include <map>
#include <sstream>

#include "fairsim/simgame.hh"

namespace fairsim {

std::string format_lasso(const Nbta& aut, const LassoWord& w) {
    std::ostringstream s;
    for (SymbolId a : w.stem) s << aut.alphabet().symbols[a];
    s << '(';
    for (SymbolId a : w.loop) s << aut.alphabet().symbols[a];
    s << ")^w";
    return s.str();
}

std::string format_prefix_tree(const Nbta& aut, const PrefixTree& t) {
    std::ostringstream s;
    s << aut.alphabet().symbols[t.symbol];
    if (!t.children.empty()) {
        s << '(';
        for (std::size_t i = 0; i < t.children.size(); ++i) {
            if (i) s << ',';
            s << format_prefix_tree(aut, t.children[i]);
        }
        s << ')';
    } else if (aut.alphabet().arity(t.symbol) > 0) {
        s << "(..)"; // cut at the depth bound
    }
    return s.str();
}

namespace {

void require_unary(const Nbta& aut) {
    if (!aut.unary()) throw ValidationError("word-automaton oracle requires all arities to be 1");
}

// successor states of x on letter a (unary automaton)
std::vector<StateId> word_step(const Nbta& aut, StateId x, SymbolId a) {
    std::vector<StateId> out;
    for (const Transition& t : aut.delta(x))
        if (t.symbol == a) out.push_back(t.children[0]);
    return out;
}

std::vector<bool> states_after(const Nbta& aut, const std::vector<SymbolId>& word) {
    std::vector<bool> cur(aut.num_states(), false);
    for (StateId x : aut.initial_states()) cur[x] = true;
    for (SymbolId a : word) {
        std::vector<bool> next(aut.num_states(), false);
        for (StateId x = 0; x < aut.num_states(); ++x)
            if (cur[x])
                for (StateId x2 : word_step(aut, x, a)) next[x2] = true;
        cur = std::move(next);
    }
    return cur;
}

} // namespace

bool nbw_lasso_member(const Nbta& aut, const LassoWord& w) {
    require_unary(aut);
    if (w.loop.empty()) throw ValidationError("lasso loop must be nonempty");
    const std::size_t n = aut.num_states();
    const std::size_t L = w.loop.size();
    std::vector<bool> after_stem = states_after(aut, w.stem);
    if (std::none_of(after_stem.begin(), after_stem.end(), [](bool b) { return b; })) return false;

    // product graph over X x loop positions
    const std::size_t total = n * L;
    auto node = [&](StateId x, std::size_t i) { return x * L + i; };
    std::vector<std::vector<std::uint32_t>> succ(total);
    for (StateId x = 0; x < n; ++x)
        for (std::size_t i = 0; i < L; ++i)
            for (StateId x2 : word_step(aut, x, w.loop[i]))
                succ[node(x, i)].push_back(static_cast<std::uint32_t>(node(x2, (i + 1) % L)));

    // nodes from which an accepting cycle is reachable: first find nodes
    // on a cycle through an accepting state, then backward-close
    std::vector<bool> good(total, false);
    for (StateId x = 0; x < n; ++x) {
        if (!aut.accepting(x)) continue;
        for (std::size_t i = 0; i < L; ++i) {
            // is node(x,i) on a cycle of length >= 1?
            std::vector<bool> seen(total, false);
            std::vector<std::uint32_t> stack(succ[node(x, i)]);
            bool cycle = false;
            while (!stack.empty() && !cycle) {
                std::uint32_t v = stack.back();
                stack.pop_back();
                if (v == node(x, i)) { cycle = true; break; }
                if (seen[v]) continue;
                seen[v] = true;
                for (std::uint32_t w2 : succ[v]) stack.push_back(w2);
            }
            if (cycle) good[node(x, i)] = true;
        }
    }
    // forward reachability from the stem frontier to a good node
    std::vector<bool> visited(total, false);
    std::vector<std::uint32_t> stack;
    for (StateId x = 0; x < n; ++x)
        if (after_stem[x]) {
            stack.push_back(static_cast<std::uint32_t>(node(x, 0)));
            visited[node(x, 0)] = true;
        }
    while (!stack.empty()) {
        std::uint32_t v = stack.back();
        stack.pop_back();
        if (good[v]) return true;
        for (std::uint32_t w2 : succ[v])
            if (!visited[w2]) { visited[w2] = true; stack.push_back(w2); }
    }
    return false;
}

namespace {

// words of each exact length in lexicographic symbol order
std::vector<std::vector<SymbolId>> words_of_length(std::size_t nsym, std::uint32_t len) {
    std::vector<std::vector<SymbolId>> out;
    std::vector<SymbolId> w(len, 0);
    if (nsym == 0) return out;
    for (;;) {
        out.push_back(w);
        std::size_t pos = len;
        while (pos > 0) {
            if (++w[pos - 1] < nsym) break;
            w[pos - 1] = 0;
            --pos;
        }
        if (pos == 0) break;
        if (len == 0) break;
    }
    if (len == 0) out.resize(1);
    return out;
}

} // namespace

std::optional<LassoWord> nbw_inclusion_bounded(const Nbta& x, const Nbta& y,
                                               std::uint32_t stem_bound,
                                               std::uint32_t loop_bound) {
    require_unary(x);
    require_unary(y);
    if (!(x.alphabet() == y.alphabet()))
        throw ValidationError("bounded inclusion requires the same alphabet");
    const std::size_t nsym = x.alphabet().size();
    for (std::uint32_t sl = 0; sl <= stem_bound; ++sl)
        for (const auto& stem : words_of_length(nsym, sl))
            for (std::uint32_t ll = 1; ll <= loop_bound; ++ll)
                for (const auto& loop : words_of_length(nsym, ll)) {
                    LassoWord w{stem, loop};
                    if (nbw_lasso_member(x, w) && !nbw_lasso_member(y, w)) return w;
                }
    return std::nullopt;
}

namespace {

// Realizable-state sets of a prefix tree, bottom-up: at a cut node the
// states whose residual language can continue under the node's symbol, at
// an expanded node the states with a matching transition into realizable
// children.
std::vector<bool> realizable_states(const Nbta& aut, const PrefixTree& t,
                                    const std::vector<bool>& nonempty) {
    const std::size_t n = aut.num_states();
    std::vector<bool> out(n, false);
    if (t.children.empty() && aut.alphabet().arity(t.symbol) > 0) {
        for (StateId s = 0; s < n; ++s)
            for (const Transition& tr : aut.delta(s)) {
                if (tr.symbol != t.symbol) continue;
                bool ok = std::all_of(tr.children.begin(), tr.children.end(),
                                      [&](StateId c) { return nonempty[c]; });
                if (ok) { out[s] = true; break; }
            }
        return out;
    }
    std::vector<std::vector<bool>> child_sets;
    child_sets.reserve(t.children.size());
    for (const PrefixTree& c : t.children)
        child_sets.push_back(realizable_states(aut, c, nonempty));
    for (StateId s = 0; s < n; ++s)
        for (const Transition& tr : aut.delta(s)) {
            if (tr.symbol != t.symbol) continue;
            bool ok = true;
            for (std::size_t i = 0; i < tr.children.size() && ok; ++i)
                ok = child_sets[i][tr.children[i]];
            if (ok) { out[s] = true; break; }
        }
    return out;
}

bool intersects_initial(const Nbta& aut, const std::vector<bool>& states) {
    for (StateId s : aut.initial_states())
        if (states[s]) return true;
    return false;
}

} // namespace

bool prefix_realizable(const Nbta& aut, const PrefixTree& t) {
    auto nonempty = nonemptiness_game(aut).nonempty;
    return intersects_initial(aut, realizable_states(aut, t, nonempty));
}

std::optional<PrefixTree> tree_prefix_inclusion(const Nbta& x, const Nbta& y,
                                                std::uint32_t depth) {
    if (!(x.alphabet() == y.alphabet()))
        throw ValidationError("prefix inclusion requires the same ranked alphabet");
    const RankedAlphabet& alpha = x.alphabet();
    const std::uint32_t cap = arity_cap_from_env();
    for (std::uint32_t a : alpha.arities)
        if (a > cap) throw ValidationError("arity cap exceeded for prefix enumeration");

    auto ne_x = nonemptiness_game(x).nonempty;
    auto ne_y = nonemptiness_game(y).nonempty;

    // Enumerate the images (S_X(t), S_Y(t)) of trees level by level
    // instead of the trees themselves; one witness tree per image value.
    struct Entry {
        std::vector<bool> sx, sy;
        PrefixTree tree;
    };

    auto cut_entry = [&](SymbolId s) {
        Entry e;
        e.tree.symbol = s;
        PrefixTree t{s, {}};
        e.sx = realizable_states(x, t, ne_x);
        e.sy = realizable_states(y, t, ne_y);
        return e;
    };

    auto counterexample = [&](const Entry& e) {
        return intersects_initial(x, e.sx) && !intersects_initial(y, e.sy);
    };

    std::vector<Entry> level;
    std::map<std::pair<std::vector<bool>, std::vector<bool>>, bool> seen;
    for (SymbolId s = 0; s < alpha.size(); ++s) {
        Entry e = cut_entry(s);
        if (depth == 0 && counterexample(e)) return e.tree;
        auto key = std::make_pair(e.sx, e.sy);
        if (!seen.emplace(key, true).second) continue;
        level.push_back(std::move(e));
    }
    if (depth == 0) return std::nullopt;

    for (std::uint32_t d = 1; d <= depth; ++d) {
        std::vector<Entry> next;
        std::map<std::pair<std::vector<bool>, std::vector<bool>>, bool> next_seen;
        for (SymbolId s = 0; s < alpha.size(); ++s) {
            const std::uint32_t k = alpha.arity(s);
            // combinations of child entries, lexicographic
            std::vector<std::size_t> pick(k, 0);
            if (level.empty() && k > 0) continue;
            for (;;) {
                Entry e;
                e.tree.symbol = s;
                for (std::size_t i = 0; i < k; ++i) e.tree.children.push_back(level[pick[i]].tree);
                auto states_for = [&](const Nbta& aut, auto member) {
                    std::vector<bool> out(aut.num_states(), false);
                    for (StateId st = 0; st < aut.num_states(); ++st)
                        for (const Transition& tr : aut.delta(st)) {
                            if (tr.symbol != s) continue;
                            bool ok = true;
                            for (std::size_t i = 0; i < k && ok; ++i)
                                ok = member(pick[i], tr.children[i]);
                            if (ok) { out[st] = true; break; }
                        }
                    return out;
                };
                e.sx = states_for(x, [&](std::size_t p, StateId c) { return level[p].sx[c]; });
                e.sy = states_for(y, [&](std::size_t p, StateId c) { return level[p].sy[c]; });
                if (d == depth && counterexample(e)) return e.tree;
                auto key = std::make_pair(e.sx, e.sy);
                if (next_seen.emplace(key, true).second) next.push_back(e);

                std::size_t pos = k;
                while (pos > 0) {
                    if (++pick[pos - 1] < level.size()) break;
                    pick[pos - 1] = 0;
                    --pos;
                }
                if (pos == 0) break;
                if (k == 0) break;
            }
        }
        // deeper levels may also cut immediately below the root: a node at
        // depth < d remains a cut if the tree ends there, which the next
        // level's combinations cover through 0-ary leaves; fresh cut nodes
        // only occur at the frontier and are re-seeded each level
        for (SymbolId s = 0; s < alpha.size(); ++s) {
            Entry e = cut_entry(s);
            auto key = std::make_pair(e.sx, e.sy);
            if (next_seen.emplace(key, true).second) next.push_back(std::move(e));
        }
        level = std::move(next);
    }
    return std::nullopt;
}

std::optional<Word> cylinder_inclusion(const Pbwa& x, const Pbwa& y, std::uint32_t maxlen) {
    if (!x.same_alphabet(y)) throw ValidationError("cylinder inclusion requires the same alphabet");
    const std::size_t nl = x.num_letters();
    // incremental sweep: carry iota * M(w) for both sides
    struct Node {
        Word w;
        RVec vx, vy;
    };
    RVec acc_x = acceptance_vector(x), acc_y = acceptance_vector(y);
    std::vector<Node> frontier{{Word{}, x.initial(), y.initial()}};
    for (std::uint32_t len = 0; len <= maxlen; ++len) {
        for (const Node& n : frontier)
            if (dot(n.vx, acc_x) > dot(n.vy, acc_y)) return n.w;
        if (len == maxlen) break;
        std::vector<Node> next;
        next.reserve(frontier.size() * nl);
        for (const Node& n : frontier)
            for (LetterId a = 0; a < nl; ++a) {
                Node m;
                m.w = n.w;
                m.w.push_back(a);
                m.vx = vec_mat(n.vx, x.matrix(a));
                m.vy = vec_mat(n.vy, y.matrix(a));
                next.push_back(std::move(m));
            }
        frontier = std::move(next);
    }
    return std::nullopt;
}

} // namespace fairsim

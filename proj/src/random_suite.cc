#include "fairsim/random_suite.hh"

#include <algorithm>
#include <sstream>

#include "fairsim/io.hh"
#include "fairsim/oracle.hh"
#include "fairsim/simgame.hh"

namespace fairsim {

Nbta random_nbta(Rng& rng, const SuiteLimits& limits, bool unary_only) {
    RankedAlphabet alpha;
    const std::uint32_t nsym = 1 + static_cast<std::uint32_t>(rng.below(limits.max_symbols));
    for (std::uint32_t s = 0; s < nsym; ++s) {
        alpha.symbols.push_back(std::string(1, static_cast<char>('a' + s)));
        alpha.arities.push_back(unary_only ? 1
                                           : static_cast<std::uint32_t>(rng.below(limits.max_arity + 1)));
    }
    const std::uint32_t n = 1 + static_cast<std::uint32_t>(rng.below(limits.max_states));
    std::vector<std::string> names;
    for (std::uint32_t i = 0; i < n; ++i) names.push_back("q" + std::to_string(i));
    std::vector<std::vector<Transition>> delta(n);
    for (std::uint32_t x = 0; x < n; ++x) {
        const std::uint32_t count = static_cast<std::uint32_t>(rng.below(4)); // 0..3 tuples
        for (std::uint32_t t = 0; t < count; ++t) {
            Transition tr;
            tr.symbol = static_cast<SymbolId>(rng.below(nsym));
            for (std::uint32_t c = 0; c < alpha.arity(tr.symbol); ++c)
                tr.children.push_back(static_cast<StateId>(rng.below(n)));
            if (std::find(delta[x].begin(), delta[x].end(), tr) == delta[x].end())
                delta[x].push_back(std::move(tr));
        }
    }
    std::vector<bool> initial(n, false), accepting(n, false);
    for (std::uint32_t x = 0; x < n; ++x) {
        if (rng.chance(40)) initial[x] = true;
        if (rng.chance(50)) accepting[x] = true;
    }
    if (rng.chance(90)) initial[rng.below(n)] = true; // mostly nonempty initial sets
    return Nbta(std::move(alpha), std::move(names), std::move(delta), std::move(initial),
                std::move(accepting));
}

std::pair<Nbta, Nbta> random_nbta_pair(Rng& rng, const SuiteLimits& limits) {
    const bool unary = rng.chance(33);
    Nbta x = random_nbta(rng, limits, unary);
    // simulator over the challenger's alphabet
    const RankedAlphabet& alpha = x.alphabet();
    const std::uint32_t n = 1 + static_cast<std::uint32_t>(rng.below(limits.max_states));
    std::vector<std::string> names;
    for (std::uint32_t i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
    std::vector<std::vector<Transition>> delta(n);
    for (std::uint32_t s = 0; s < n; ++s) {
        const std::uint32_t count = static_cast<std::uint32_t>(rng.below(4));
        for (std::uint32_t t = 0; t < count; ++t) {
            Transition tr;
            tr.symbol = static_cast<SymbolId>(rng.below(alpha.size()));
            for (std::uint32_t c = 0; c < alpha.arity(tr.symbol); ++c)
                tr.children.push_back(static_cast<StateId>(rng.below(n)));
            if (std::find(delta[s].begin(), delta[s].end(), tr) == delta[s].end())
                delta[s].push_back(std::move(tr));
        }
    }
    std::vector<bool> initial(n, false), accepting(n, false);
    for (std::uint32_t s = 0; s < n; ++s) {
        if (rng.chance(40)) initial[s] = true;
        if (rng.chance(50)) accepting[s] = true;
    }
    if (rng.chance(90)) initial[rng.below(n)] = true;
    return {std::move(x), Nbta(alpha, std::move(names), std::move(delta), std::move(initial),
                               std::move(accepting))};
}

namespace {

Rational random_prob(Rng& rng) {
    // denominators up to 6 keep exact arithmetic small
    const std::uint64_t den = 1 + rng.below(6);
    const std::uint64_t num = rng.below(den + 1);
    return Rational(static_cast<long>(num), static_cast<long>(den));
}

} // namespace

Pbwa random_pbwa(Rng& rng, const SuiteLimits& limits) {
    const std::uint32_t nl = 1 + static_cast<std::uint32_t>(rng.below(limits.max_symbols));
    std::vector<std::string> letters;
    for (std::uint32_t a = 0; a < nl; ++a) letters.push_back(std::string(1, static_cast<char>('a' + a)));
    const std::uint32_t n = 1 + static_cast<std::uint32_t>(rng.below(limits.max_states));
    std::vector<std::string> names;
    for (std::uint32_t i = 0; i < n; ++i) names.push_back("s" + std::to_string(i));

    std::vector<RMatrix> mats(nl, RMatrix::zero(n, n));
    for (std::uint32_t x = 0; x < n; ++x) {
        // split a row budget <= 1 over a few random targets
        Rational budget = rng.chance(70) ? Rational::one() : random_prob(rng);
        const std::uint32_t pieces = 1 + static_cast<std::uint32_t>(rng.below(3));
        for (std::uint32_t p = 0; p < pieces && !budget.is_zero(); ++p) {
            Rational share = (p + 1 == pieces) ? budget : budget * Rational(1, 2);
            if (rng.chance(30)) share = budget * Rational(1, 3);
            budget -= share;
            mats[rng.below(nl)].at(x, rng.below(n)) += share;
        }
    }
    RVec init(n);
    Rational imass = Rational::one();
    const std::uint32_t spread = 1 + static_cast<std::uint32_t>(rng.below(2));
    for (std::uint32_t p = 0; p < spread; ++p) {
        Rational share = (p + 1 == spread) ? imass : imass * Rational(1, 2);
        imass -= share;
        init[rng.below(n)] += share;
    }
    std::vector<bool> accepting(n, false);
    for (std::uint32_t x = 0; x < n; ++x) accepting[x] = rng.chance(50);
    return Pbwa(std::move(letters), std::move(names), std::move(mats), std::move(init),
                std::move(accepting));
}

ProbCandidate random_prob_candidate(Rng& rng, const SuiteLimits& limits) {
    Pbwa x = random_pbwa(rng, limits);
    const std::size_t n = x.num_states();
    const std::uint32_t strategy = static_cast<std::uint32_t>(rng.below(4));

    if (strategy == 3) {
        // asymptotic-absorption pair: the challenger alternates between a
        // non-accepting and an accepting state, the simulator only falls
        // into its accepting sink in the limit, so the A12 sequences
        // climb geometrically and exercise the omega certification
        const Rational p(1 + static_cast<long>(rng.below(3)), 4); // 1/4..3/4
        const Rational t(1, 2);
        RMatrix mx(2, 2);
        mx.at(0, 1) = Rational::one();
        mx.at(1, 0) = Rational::one();
        RVec ix(2);
        ix[0] = Rational(static_cast<long>(rng.below(3)), 4); // <= 1/2 = t
        ix[1] = t;
        Pbwa xa({"a"}, {"c0", "c1"}, {mx}, ix, {false, true});
        RMatrix my(2, 2);
        my.at(0, 0) = p;
        my.at(0, 1) = Rational::one() - p;
        my.at(1, 1) = Rational::one();
        RVec iy(2);
        iy[0] = Rational::one();
        Pbwa ya({"a"}, {"s0", "s1"}, {my}, iy, {false, true});
        RMatrix a(2, 2);
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t c = 0; c < 2; ++c) a.at(r, c) = t;
        return {std::move(xa), std::move(ya), MatrixWitness{std::move(a)}};
    }

    if (strategy == 2) {
        // unrelated pair with a random substochastic witness; mostly
        // rejected, which exercises the diagnostics
        Pbwa y = random_pbwa(rng, limits);
        while (y.num_letters() != x.num_letters()) y = random_pbwa(rng, limits);
        RMatrix a(y.num_states(), n);
        for (std::size_t r = 0; r < y.num_states(); ++r) {
            Rational budget = Rational::one();
            for (std::size_t c = 0; c < n && !budget.is_zero(); ++c)
                if (rng.chance(50)) {
                    Rational share = budget * Rational(1, 2);
                    a.at(r, c) = share;
                    budget -= share;
                }
        }
        return {std::move(x), std::move(y), MatrixWitness{std::move(a)}};
    }

    // Y = X with inflated transitions and identity witness; optionally
    // demote accepting states that still reach the remaining accepting
    // set, which makes the A12 sequences nontrivial.
    std::vector<RMatrix> mats;
    for (std::uint32_t a = 0; a < x.num_letters(); ++a) mats.push_back(x.matrix(a));
    RVec init = x.initial();
    std::vector<bool> accepting = x.accepting_set();
    for (std::size_t s = 0; s < n; ++s) {
        Rational headroom = x.leak()[s];
        if (!headroom.is_zero() && rng.chance(50)) {
            mats[rng.below(x.num_letters())].at(s, rng.below(n)) += headroom * Rational(1, 2);
        }
        if (!accepting[s] && rng.chance(25)) accepting[s] = true;
    }
    std::vector<std::string> names;
    std::vector<std::string> letters;
    for (std::uint32_t a = 0; a < x.num_letters(); ++a) letters.push_back(x.letter_name(a));
    for (std::size_t s = 0; s < n; ++s) names.push_back(x.state_name(s));
    Pbwa y(letters, names, std::move(mats), std::move(init), std::move(accepting));

    if (strategy == 1) {
        // demote one accepting state of Y that reaches another accepting
        // state; language preserved, sequences become interesting
        std::vector<std::uint32_t> cands;
        for (std::uint32_t s = 0; s < n; ++s) {
            if (!y.accepting(s)) continue;
            std::vector<bool> acc = y.accepting_set();
            acc[s] = false;
            bool still = false;
            Pbwa probe = y.with_accepting(acc);
            Pbwa closed = accepting_closure(probe);
            if (closed.accepting(s)) still = true;
            if (still) cands.push_back(s);
        }
        if (!cands.empty()) {
            std::vector<bool> acc = y.accepting_set();
            acc[cands[rng.below(cands.size())]] = false;
            y = y.with_accepting(std::move(acc));
        }
    }
    return {std::move(x), std::move(y), MatrixWitness{RMatrix::identity(n)}};
}

ParityGame random_parity_game(Rng& rng, std::uint32_t max_positions, std::uint32_t max_priority) {
    ParityGame g;
    const std::uint32_t n = 1 + static_cast<std::uint32_t>(rng.below(max_positions));
    for (std::uint32_t v = 0; v < n; ++v) {
        g.owner.push_back(rng.chance(50) ? Player::Even : Player::Odd);
        g.priority.push_back(static_cast<std::uint32_t>(rng.below(max_priority + 1)));
        g.moves.emplace_back();
        const std::uint32_t deg = static_cast<std::uint32_t>(rng.below(4)); // 0..3 successors
        for (std::uint32_t e = 0; e < deg; ++e) {
            std::uint32_t w = static_cast<std::uint32_t>(rng.below(n));
            if (std::find(g.moves[v].begin(), g.moves[v].end(), w) == g.moves[v].end())
                g.moves[v].push_back(w);
        }
    }
    return g;
}

namespace {

// Can Odd, choosing freely where he owns and following sigma elsewhere,
// reach an Even dead end or a cycle with odd maximum priority?
std::vector<bool> odd_wins_under(const ParityGame& g, const std::vector<std::uint32_t>& sigma) {
    const std::size_t n = g.size();
    std::vector<std::vector<std::uint32_t>> succ(n);
    std::vector<bool> bad(n, false);
    for (std::size_t v = 0; v < n; ++v) {
        if (g.owner[v] == Player::Even) {
            if (g.moves[v].empty()) bad[v] = true; // Even stuck
            else succ[v].push_back(sigma[v]);
        } else {
            if (!g.moves[v].empty()) succ[v] = g.moves[v];
            // Odd stuck: no outgoing edges, never bad on its own
        }
    }
    // nodes on a cycle with odd maximum priority: for each odd priority p,
    // restrict to priority <= p and look for a cycle through priority p
    std::uint32_t maxp = 0;
    for (auto p : g.priority) maxp = std::max(maxp, p);
    for (std::uint32_t p = 1; p <= maxp; p += 2) {
        // reachability within the restricted graph
        for (std::size_t s = 0; s < n; ++s) {
            if (g.priority[s] != p) continue;
            // can s reach itself through nodes of priority <= p?
            std::vector<bool> seen(n, false);
            std::vector<std::uint32_t> stack;
            for (std::uint32_t w : succ[s])
                if (g.priority[w] <= p && !seen[w]) { seen[w] = true; stack.push_back(w); }
            bool cycle = seen[s];
            while (!stack.empty() && !cycle) {
                std::uint32_t v = stack.back();
                stack.pop_back();
                if (v == s) { cycle = true; break; }
                for (std::uint32_t w : succ[v])
                    if (g.priority[w] <= p && !seen[w]) { seen[w] = true; stack.push_back(w); }
                if (seen[s]) cycle = true;
            }
            if (cycle) bad[s] = true;
        }
    }
    // Odd wins wherever a bad node is reachable
    std::vector<bool> wins(n, false);
    for (std::size_t s = 0; s < n; ++s) {
        if (wins[s]) continue;
        std::vector<bool> seen(n, false);
        std::vector<std::uint32_t> stack{static_cast<std::uint32_t>(s)};
        seen[s] = true;
        bool hit = false;
        while (!stack.empty() && !hit) {
            std::uint32_t v = stack.back();
            stack.pop_back();
            if (bad[v]) { hit = true; break; }
            for (std::uint32_t w : succ[v])
                if (!seen[w]) { seen[w] = true; stack.push_back(w); }
        }
        wins[s] = hit;
    }
    return wins;
}

} // namespace

std::vector<bool> brute_force_parity(const ParityGame& game) {
    const std::size_t n = game.size();
    std::vector<std::uint32_t> even_positions;
    for (std::size_t v = 0; v < n; ++v)
        if (game.owner[v] == Player::Even && !game.moves[v].empty())
            even_positions.push_back(static_cast<std::uint32_t>(v));

    std::vector<bool> even_wins(n, false);
    std::vector<std::uint32_t> sigma(n, 0);
    std::vector<std::size_t> choice(even_positions.size(), 0);
    for (;;) {
        for (std::size_t i = 0; i < even_positions.size(); ++i)
            sigma[even_positions[i]] = game.moves[even_positions[i]][choice[i]];
        std::vector<bool> odd = odd_wins_under(game, sigma);
        for (std::size_t v = 0; v < n; ++v)
            if (!odd[v]) even_wins[v] = true;
        // next strategy
        std::size_t pos = even_positions.size();
        while (pos > 0) {
            if (++choice[pos - 1] < game.moves[even_positions[pos - 1]].size()) break;
            choice[pos - 1] = 0;
            --pos;
        }
        if (pos == 0) break;
        if (even_positions.empty()) break;
    }
    return even_wins;
}

NdSuiteOutcome run_nd_suite(std::uint64_t seed, std::uint32_t count, const SuiteLimits& limits,
                            std::uint32_t prefix_depth, std::uint32_t lasso_bound) {
    NdSuiteOutcome out;
    Rng rng(seed);
    for (std::uint32_t i = 0; i < count; ++i) {
        auto [x, y] = random_nbta_pair(rng, limits);
        ++out.instances;
        auto fixpoint = largest_fair_simulation(x, y);
        auto game = build_simulation_game(x, y);
        auto solved = solve_parity(game.game);
        const bool game_wins = solved.even_wins[game.start];
        if (fixpoint.has_value() == game_wins) {
            ++out.agreements;
        } else {
            std::ostringstream v;
            v << "instance " << i << ": fixpoint says " << (fixpoint ? "holds" : "fails")
              << " but the parity game says " << (game_wins ? "holds" : "fails");
            out.violations.push_back(v.str());
            continue;
        }
        if (!fixpoint) continue;
        ++out.sims_found;
        // Thm-3.4-style desk checks: a fair simulation must not coexist
        // with a bounded-language counterexample
        ++out.prefix_checked;
        if (auto ce = tree_prefix_inclusion(x, y, prefix_depth)) {
            std::ostringstream v;
            v << "instance " << i << ": simulation exists but prefix counterexample "
              << format_prefix_tree(x, *ce);
            out.violations.push_back(v.str());
        }
        if (x.unary() && y.unary()) {
            ++out.lasso_checked;
            if (auto ce = nbw_inclusion_bounded(x, y, lasso_bound, lasso_bound)) {
                std::ostringstream v;
                v << "instance " << i << ": simulation exists but lasso counterexample "
                  << format_lasso(x, *ce);
                out.violations.push_back(v.str());
            }
        }
    }
    return out;
}

ProbSuiteOutcome run_prob_suite(std::uint64_t seed, std::uint32_t count, const SuiteLimits& limits,
                                std::uint32_t cylinder_len) {
    ProbSuiteOutcome out;
    Rng rng(seed);
    for (std::uint32_t i = 0; i < count; ++i) {
        ProbCandidate cand = random_prob_candidate(rng, limits);
        ++out.instances;
        ProbCheckResult fwd = verify_forward_sim(cand.x, cand.y, cand.witness);
        if (!fwd.holds) continue;
        ++out.forward_ok;
        auto seqs = search_sequences(cand.x, cand.y, cand.witness);
        if (!seqs) continue;
        ProbCheckResult full = verify_matrix_fair_sim(cand.x, cand.y, cand.witness, *seqs);
        if (!full.holds) {
            out.violations.push_back("instance " + std::to_string(i) +
                                     ": search returned a witness that fails verification (" +
                                     full.violated + ")");
            continue;
        }
        ++out.accepted;
        if (auto ce = cylinder_inclusion(cand.x, cand.y, cylinder_len)) {
            out.violations.push_back("instance " + std::to_string(i) +
                                     ": accepted witness but cylinder counterexample '" +
                                     format_word(cand.x, *ce) + "'");
        }
    }
    return out;
}

} // namespace fairsim

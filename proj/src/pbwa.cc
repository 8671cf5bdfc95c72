#include "fairsim/pbwa.hh"

#include <algorithm>
#include <cassert>
#include <functional>

namespace fairsim {

Pbwa::Pbwa(std::vector<std::string> letters, std::vector<std::string> state_names,
           std::vector<RMatrix> matrices, RVec initial, std::vector<bool> accepting)
    : letters_(std::move(letters)),
      state_names_(std::move(state_names)),
      matrices_(std::move(matrices)),
      initial_(std::move(initial)),
      accepting_(std::move(accepting)) {
    const std::size_t n = state_names_.size();
    if (letters_.empty()) throw ValidationError("alphabet must be nonempty");
    if (matrices_.size() != letters_.size())
        throw ValidationError("one transition matrix per letter required");
    if (initial_.size() != n || accepting_.size() != n)
        throw ValidationError("state-indexed containers disagree on the number of states");
    for (const RMatrix& m : matrices_)
        if (m.rows() != n || m.cols() != n)
            throw ValidationError("transition matrix dimensions do not match the state space");

    chain_ = RMatrix(n, n);
    for (const RMatrix& m : matrices_)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const Rational& e = m.at(i, j);
                if (!e.in_unit_interval())
                    throw ValidationError("transition probability outside [0,1] at state '" +
                                          state_names_[i] + "'");
                chain_.at(i, j) += e;
            }

    leak_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rational mass = chain_.row_sum(i);
        if (mass > Rational::one())
            throw ValidationError("row mass of state '" + state_names_[i] + "' is " + mass.str() +
                                  " > 1");
        leak_[i] = Rational::one() - mass;
    }
    Rational imass;
    for (std::size_t i = 0; i < n; ++i) {
        if (!initial_[i].in_unit_interval())
            throw ValidationError("initial probability outside [0,1]");
        imass += initial_[i];
    }
    if (imass > Rational::one())
        throw ValidationError("initial mass is " + imass.str() + " > 1");
}

std::optional<std::uint32_t> Pbwa::find_state(const std::string& name) const {
    for (std::size_t i = 0; i < state_names_.size(); ++i)
        if (state_names_[i] == name) return static_cast<std::uint32_t>(i);
    return std::nullopt;
}

std::optional<LetterId> Pbwa::find_letter(const std::string& name) const {
    for (std::size_t i = 0; i < letters_.size(); ++i)
        if (letters_[i] == name) return static_cast<LetterId>(i);
    return std::nullopt;
}

std::vector<std::uint32_t> Pbwa::accepting_states() const {
    std::vector<std::uint32_t> r;
    for (std::size_t i = 0; i < accepting_.size(); ++i)
        if (accepting_[i]) r.push_back(static_cast<std::uint32_t>(i));
    return r;
}

Pbwa Pbwa::with_accepting(std::vector<bool> accepting) const {
    return Pbwa(letters_, state_names_, matrices_, initial_, std::move(accepting));
}

RVec nodiv_k(const Pbwa& aut, std::uint32_t k) {
    RVec v(aut.num_states(), Rational::one());
    for (std::uint32_t step = 0; step < k; ++step) v = mat_vec(aut.chain_matrix(), v);
    return v;
}

namespace {

// Backward reachability on the chain graph: states from which `targets`
// (plus optionally the sink) is reachable with positive probability.
std::vector<bool> can_reach(const Pbwa& aut, const std::vector<bool>& target_states,
                            bool sink_is_target) {
    const std::size_t n = aut.num_states();
    std::vector<bool> reach(n, false);
    for (std::size_t i = 0; i < n; ++i)
        reach[i] = target_states[i] || (sink_is_target && !aut.leak()[i].is_zero());
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (reach[i]) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (!aut.chain_matrix().at(i, j).is_zero() && reach[j]) {
                    reach[i] = true;
                    changed = true;
                    break;
                }
        }
    }
    return reach;
}

// Pr(reach target) on the chain view; `target` is absorbing-closed. States
// that cannot reach it get 0; the rest is one exact linear solve.
RVec reach_probability(const Pbwa& aut, const std::vector<bool>& target, bool sink_is_target) {
    const std::size_t n = aut.num_states();
    std::vector<bool> reach = can_reach(aut, target, sink_is_target);
    RVec result(n);
    std::vector<std::size_t> unknown; // reachable, not inside the target
    std::vector<std::size_t> index(n, SIZE_MAX);
    for (std::size_t i = 0; i < n; ++i) {
        if (target[i]) {
            result[i] = Rational::one();
        } else if (reach[i]) {
            index[i] = unknown.size();
            unknown.push_back(i);
        }
    }
    if (!unknown.empty()) {
        const std::size_t m = unknown.size();
        RMatrix a(m, m);
        RVec b(m);
        for (std::size_t r = 0; r < m; ++r) {
            const std::size_t i = unknown[r];
            a.at(r, r) = Rational::one();
            if (sink_is_target) b[r] += aut.leak()[i];
            for (std::size_t j = 0; j < n; ++j) {
                const Rational& p = aut.chain_matrix().at(i, j);
                if (p.is_zero()) continue;
                if (target[j]) b[r] += p;
                else if (index[j] != SIZE_MAX) a.at(r, index[j]) -= p;
                // transitions into unreachable states contribute 0
            }
        }
        auto x = solve_linear(std::move(a), std::move(b));
        if (!x) throw Error("internal error: reachability system is singular");
        for (std::size_t r = 0; r < m; ++r) result[unknown[r]] = (*x)[r];
    }
    return result;
}

} // namespace

RVec nodiv(const Pbwa& aut) {
    const std::size_t n = aut.num_states();
    std::vector<bool> no_target(n, false);
    RVec to_sink = reach_probability(aut, no_target, /*sink_is_target=*/true);
    RVec result(n);
    for (std::size_t i = 0; i < n; ++i) result[i] = Rational::one() - to_sink[i];
    return result;
}

std::vector<Bscc> bsccs(const Pbwa& aut) {
    const std::size_t n = aut.num_states();
    // the divergence sink joins the chain view only when mass is missing
    bool leaks = false;
    for (std::size_t i = 0; i < n; ++i)
        if (!aut.leak()[i].is_zero()) leaks = true;
    const std::size_t sink = n;
    const std::size_t total = leaks ? n + 1 : n;

    auto edge = [&](std::size_t i, std::size_t j) {
        if (i == sink) return j == sink;
        if (j == sink) return !aut.leak()[i].is_zero();
        return !aut.chain_matrix().at(i, j).is_zero();
    };

    // iterative Tarjan
    std::vector<int> low(total, -1), disc(total, -1);
    std::vector<bool> on_stack(total, false);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> components;
    int time = 0;

    std::function<void(std::size_t)> visit = [&](std::size_t v) {
        disc[v] = low[v] = time++;
        stack.push_back(v);
        on_stack[v] = true;
        for (std::size_t w = 0; w < total; ++w) {
            if (!edge(v, w)) continue;
            if (disc[w] < 0) {
                visit(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], disc[w]);
            }
        }
        if (low[v] == disc[v]) {
            std::vector<std::size_t> comp;
            for (;;) {
                std::size_t w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                comp.push_back(w);
                if (w == v) break;
            }
            components.push_back(std::move(comp));
        }
    };
    for (std::size_t v = 0; v < total; ++v)
        if (disc[v] < 0) visit(v);

    std::vector<Bscc> result;
    for (auto& comp : components) {
        bool bottom = true;
        for (std::size_t v : comp) {
            for (std::size_t w = 0; w < total && bottom; ++w)
                if (edge(v, w) && std::find(comp.begin(), comp.end(), w) == comp.end())
                    bottom = false;
            if (!bottom) break;
        }
        if (!bottom) continue;
        Bscc b;
        for (std::size_t v : comp) {
            if (v == sink) b.sink = true;
            else b.states.push_back(static_cast<std::uint32_t>(v));
        }
        std::sort(b.states.begin(), b.states.end());
        result.push_back(std::move(b));
    }
    std::sort(result.begin(), result.end(), [](const Bscc& a, const Bscc& b) {
        if (a.sink != b.sink) return !a.sink;
        return a.states < b.states;
    });
    return result;
}

RVec acceptance_vector(const Pbwa& aut) {
    const std::size_t n = aut.num_states();
    std::vector<bool> target(n, false);
    for (const Bscc& b : bsccs(aut)) {
        if (b.sink) continue;
        bool meets_acc = std::any_of(b.states.begin(), b.states.end(),
                                     [&](std::uint32_t s) { return aut.accepting(s); });
        if (meets_acc)
            for (std::uint32_t s : b.states) target[s] = true;
    }
    return reach_probability(aut, target, /*sink_is_target=*/false);
}

Rational cylinder_prob(const Pbwa& aut, const Word& w) {
    for (LetterId a : w)
        if (a >= aut.num_letters()) throw ValidationError("unknown letter in word");
    RVec v = acceptance_vector(aut);
    for (std::size_t i = w.size(); i-- > 0;) v = mat_vec(aut.matrix(w[i]), v);
    return dot(aut.initial(), v);
}

} // namespace fairsim

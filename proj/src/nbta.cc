#include "fairsim/nbta.hh"

#include <algorithm>
#include <cassert>
#include <cstdlib>

namespace fairsim {

std::uint32_t arity_cap_from_env() {
    if (const char* v = std::getenv("FAIRSIM_ARITY_CAP")) {
        char* end = nullptr;
        long cap = std::strtol(v, &end, 10);
        if (end && *end == '\0' && cap > 0 && cap <= 16) return static_cast<std::uint32_t>(cap);
    }
    return kDefaultArityCap;
}

std::optional<SymbolId> RankedAlphabet::find(const std::string& name) const {
    for (std::size_t i = 0; i < symbols.size(); ++i)
        if (symbols[i] == name) return static_cast<SymbolId>(i);
    return std::nullopt;
}

Nbta::Nbta(RankedAlphabet alphabet, std::vector<std::string> state_names,
           std::vector<std::vector<Transition>> delta, std::vector<bool> initial,
           std::vector<bool> accepting, std::uint32_t arity_cap)
    : alphabet_(std::move(alphabet)),
      state_names_(std::move(state_names)),
      delta_(std::move(delta)),
      initial_(std::move(initial)),
      accepting_(std::move(accepting)) {
    if (alphabet_.symbols.empty())
        throw ValidationError("alphabet must be nonempty");
    if (alphabet_.symbols.size() != alphabet_.arities.size())
        throw ValidationError("alphabet symbols/arities size mismatch");
    for (std::size_t s = 0; s < alphabet_.size(); ++s)
        if (alphabet_.arities[s] > arity_cap)
            throw ValidationError("symbol '" + alphabet_.symbols[s] + "' exceeds arity cap " +
                                  std::to_string(arity_cap));
    const std::size_t n = state_names_.size();
    if (delta_.size() != n || initial_.size() != n || accepting_.size() != n)
        throw ValidationError("state-indexed containers disagree on the number of states");
    for (std::size_t x = 0; x < n; ++x)
        for (const Transition& t : delta_[x]) {
            if (t.symbol >= alphabet_.size())
                throw ValidationError("transition of state '" + state_names_[x] +
                                      "' uses an unknown symbol");
            if (t.children.size() != alphabet_.arity(t.symbol))
                throw ValidationError("transition of state '" + state_names_[x] + "' under '" +
                                      alphabet_.symbols[t.symbol] + "' has " +
                                      std::to_string(t.children.size()) + " children, expected " +
                                      std::to_string(alphabet_.arity(t.symbol)));
            for (StateId c : t.children)
                if (c >= n) throw ValidationError("transition child out of range");
        }
}

std::optional<StateId> Nbta::find_state(const std::string& name) const {
    for (std::size_t i = 0; i < state_names_.size(); ++i)
        if (state_names_[i] == name) return static_cast<StateId>(i);
    return std::nullopt;
}

std::vector<StateId> Nbta::initial_states() const {
    std::vector<StateId> r;
    for (std::size_t x = 0; x < initial_.size(); ++x)
        if (initial_[x]) r.push_back(static_cast<StateId>(x));
    return r;
}

bool Nbta::unary() const {
    return std::all_of(alphabet_.arities.begin(), alphabet_.arities.end(),
                       [](std::uint32_t a) { return a == 1; });
}

TupleSpace::TupleSpace(const RankedAlphabet& alphabet, std::size_t num_states)
    : num_states_(num_states) {
    offsets_.resize(alphabet.size());
    for (SymbolId s = 0; s < alphabet.size(); ++s) {
        offsets_[s] = tuples_.size();
        const std::uint32_t k = alphabet.arity(s);
        // enumerate X^k in lexicographic order
        std::vector<StateId> children(k, 0);
        if (num_states == 0 && k > 0) continue;
        for (;;) {
            tuples_.push_back(Transition{s, children});
            std::size_t pos = k;
            while (pos > 0) {
                if (++children[pos - 1] < num_states) break;
                children[pos - 1] = 0;
                --pos;
            }
            if (pos == 0) break;
        }
    }
}

std::size_t TupleSpace::index_of(const Transition& t) const {
    std::size_t idx = offsets_[t.symbol];
    std::size_t stride = 1;
    for (std::size_t i = t.children.size(); i-- > 0;) {
        idx += t.children[i] * stride;
        stride *= num_states_;
    }
    assert(idx < tuples_.size() && tuples_[idx] == t);
    return idx;
}

Relation Relation::full(std::size_t nx, std::size_t ny) {
    Relation r(nx, ny);
    r.bits_ = Bitset::full(nx * ny);
    return r;
}

std::vector<std::pair<StateId, StateId>> Relation::pairs() const {
    std::vector<std::pair<StateId, StateId>> out;
    bits_.for_each([&](std::size_t i) {
        out.emplace_back(static_cast<StateId>(i / ny_), static_cast<StateId>(i % ny_));
    });
    return out;
}

StepSetFxY StepSetFxY::full(std::size_t nfx, std::size_t ny) {
    StepSetFxY s(nfx, ny);
    s.bits = Bitset::full(nfx * ny);
    return s;
}

StepSetFxFy StepSetFxFy::full(std::size_t nfx, std::size_t nfy) {
    StepSetFxFy s(nfx, nfy);
    s.bits = Bitset::full(nfx * nfy);
    return s;
}

SimContext::SimContext(const Nbta& x, const Nbta& y) : x_(&x), y_(&y) {
    if (!(x.alphabet() == y.alphabet()))
        throw ValidationError("fair simulation requires the same ranked alphabet on both sides");
    tx_ = TupleSpace(x.alphabet(), x.num_states());
    ty_ = TupleSpace(y.alphabet(), y.num_states());
    const std::size_t ny = y.num_states();
    pair_block_.resize(x.num_states() * ny);
    pair_index_.resize(x.num_states() * ny);
    for (StateId xs = 0; xs < x.num_states(); ++xs)
        for (StateId ys = 0; ys < ny; ++ys) {
            int k = (part_block(x, xs) - 1) + 2 * (part_block(y, ys) - 1);
            pair_block_[xs * ny + ys] = static_cast<std::uint32_t>(k);
            pair_index_[xs * ny + ys] = static_cast<std::uint32_t>(block_pairs_[k].size());
            block_pairs_[k].emplace_back(xs, ys);
        }
}

Relation SimContext::box(int block_i, const StepSetFxY& s) const {
    if (s.nfx != tx_.size() || s.ny != y_->num_states())
        throw ValidationError("box: step set dimensions do not match the context");
    Relation out(x_->num_states(), y_->num_states());
    for (StateId xs = 0; xs < x_->num_states(); ++xs) {
        if (part_block(*x_, xs) != block_i) continue;
        for (StateId ys = 0; ys < y_->num_states(); ++ys) {
            bool all = true;
            for (const Transition& t : x_->delta(xs))
                if (!s.test(tx_.index_of(t), ys)) { all = false; break; }
            if (all) out.set(xs, ys);
        }
    }
    return out;
}

StepSetFxY SimContext::diamond(int block_j, const StepSetFxFy& t) const {
    if (t.nfx != tx_.size() || t.nfy != ty_.size())
        throw ValidationError("diamond: step set dimensions do not match the context");
    StepSetFxY out(tx_.size(), y_->num_states());
    for (StateId ys = 0; ys < y_->num_states(); ++ys) {
        if (part_block(*y_, ys) != block_j) continue;
        for (const Transition& b : y_->delta(ys)) {
            const std::size_t bi = ty_.index_of(b);
            for (std::size_t a = 0; a < tx_.size(); ++a)
                if (t.test(a, bi)) out.set(a, ys);
        }
    }
    return out;
}

StepSetFxFy SimContext::wedge(const Relation& u) const {
    if (u.nx() != x_->num_states() || u.ny() != y_->num_states())
        throw ValidationError("wedge: relation dimensions do not match the context");
    StepSetFxFy out(tx_.size(), ty_.size());
    for (std::size_t a = 0; a < tx_.size(); ++a) {
        const Transition& ta = tx_.tuple(a);
        for (std::size_t b = 0; b < ty_.size(); ++b) {
            const Transition& tb = ty_.tuple(b);
            if (ta.symbol != tb.symbol) continue;
            bool ok = true;
            for (std::size_t i = 0; i < ta.children.size(); ++i)
                if (!u.test(ta.children[i], tb.children[i])) { ok = false; break; }
            if (ok) out.set(a, b);
        }
    }
    return out;
}

Bitset SimContext::relation_to_block(const Relation& r, int k) const {
    Bitset b(block_pairs_[k].size());
    for (std::size_t i = 0; i < block_pairs_[k].size(); ++i)
        if (r.test(block_pairs_[k][i].first, block_pairs_[k][i].second)) b.set(i);
    return b;
}

Relation SimContext::blocks_to_relation(const eqsys::Solution<Bitset>& blocks) const {
    assert(blocks.size() == 4);
    Relation r(x_->num_states(), y_->num_states());
    for (int k = 0; k < 4; ++k)
        blocks[k].for_each([&](std::size_t i) {
            r.set(block_pairs_[k][i].first, block_pairs_[k][i].second);
        });
    return r;
}

eqsys::EquationalSystem<Bitset> SimContext::fair_sim_system() const {
    using eqsys::Sign;
    eqsys::EquationalSystem<Bitset> system;
    const Sign signs[4] = {Sign::Greatest, Sign::Least, Sign::Greatest, Sign::Greatest};
    for (int k = 0; k < 4; ++k) {
        const std::size_t n = block_pairs_[k].size();
        eqsys::Equation<Bitset> eq;
        eq.sign = signs[k];
        eq.lattice.bottom = Bitset(n);
        eq.lattice.top = Bitset::full(n);
        eq.lattice.leq = [](const Bitset& a, const Bitset& b) { return a.subset_of(b); };
        eq.lattice.join = [](const Bitset& a, const Bitset& b) { return a | b; };
        eq.lattice.meet = [](const Bitset& a, const Bitset& b) { return a & b; };
        eq.lattice.elements = [n]() {
            std::vector<Bitset> all;
            if (n > 20) return all; // enumeration only meant for small lattices
            all.reserve(1u << n);
            for (std::size_t mask = 0; mask < (1ull << n); ++mask) {
                Bitset b(n);
                for (std::size_t i = 0; i < n; ++i)
                    if ((mask >> i) & 1u) b.set(i);
                all.push_back(std::move(b));
            }
            return all;
        };
        const int block_i = 1 + (k & 1);
        const int block_j = 1 + (k >> 1);
        eq.rhs = [this, block_i, block_j, k](std::span<const Bitset> vals) {
            // inject the four block values into one X x Y relation
            Relation u(x_->num_states(), y_->num_states());
            for (int m = 0; m < 4; ++m)
                vals[m].for_each([&](std::size_t i) {
                    u.set(block_pairs_[m][i].first, block_pairs_[m][i].second);
                });
            Relation composite = box(block_i, diamond(block_j, wedge(u)));
            return relation_to_block(composite, k);
        };
        system.equations.push_back(std::move(eq));
    }
    return system;
}

Relation fair_sim_solution(const Nbta& x, const Nbta& y) {
    SimContext ctx(x, y);
    auto solution = eqsys::solve(ctx.fair_sim_system());
    return ctx.blocks_to_relation(solution);
}

NdCheckResult check_fair_simulation(const Nbta& x, const Nbta& y, const Relation& r) {
    if (r.nx() != x.num_states() || r.ny() != y.num_states())
        throw ValidationError("relation dimensions do not match the automata");
    NdCheckResult res;
    for (StateId xs : x.initial_states()) {
        bool covered = false;
        for (StateId ys : y.initial_states())
            if (r.test(xs, ys)) { covered = true; break; }
        if (!covered) {
            res.violated = "initial-state condition";
            res.witness_x = xs;
            return res;
        }
    }
    Relation solution = fair_sim_solution(x, y);
    for (auto [xs, ys] : r.pairs())
        if (!solution.test(xs, ys)) {
            res.violated = "below-solution condition";
            res.witness_pair = std::make_pair(xs, ys);
            return res;
        }
    res.holds = true;
    return res;
}

std::optional<Relation> largest_fair_simulation(const Nbta& x, const Nbta& y) {
    Relation solution = fair_sim_solution(x, y);
    for (StateId xs : x.initial_states()) {
        bool covered = false;
        for (StateId ys : y.initial_states())
            if (solution.test(xs, ys)) { covered = true; break; }
        if (!covered) return std::nullopt;
    }
    return solution;
}

} // namespace fairsim

#include "fairsim/parity.hh"

#include <algorithm>
#include <cassert>
#include <deque>
#include <sstream>

namespace fairsim {

void ParityGame::validate() const {
    const std::size_t n = owner.size();
    if (priority.size() != n || moves.size() != n)
        throw ValidationError("parity game containers disagree on the number of positions");
    for (const auto& succs : moves)
        for (std::uint32_t s : succs)
            if (s >= n) throw ValidationError("parity game move out of range");
}

namespace {

// Measure values live in prod_{p odd} [0..limit_p] with a top element;
// indices into `odd_priorities` run from the most significant (highest
// priority) downward.
struct MeasureSpace {
    std::vector<std::uint32_t> odd_priorities; // descending
    std::vector<std::uint32_t> limits;

    explicit MeasureSpace(const ParityGame& game) {
        std::uint32_t maxp = 0;
        for (auto p : game.priority) maxp = std::max(maxp, p);
        for (std::uint32_t p = (maxp % 2 == 1) ? maxp : (maxp == 0 ? 0 : maxp - 1); p >= 1;
             p -= 2) {
            odd_priorities.push_back(p);
            std::uint32_t count = 0;
            for (auto q : game.priority)
                if (q == p) ++count;
            limits.push_back(count);
            if (p == 1) break;
        }
    }

    std::size_t dims() const { return odd_priorities.size(); }

    // components with priority >= q
    std::size_t prefix_len(std::uint32_t q) const {
        std::size_t len = 0;
        while (len < dims() && odd_priorities[len] >= q) ++len;
        return len;
    }
};

struct Value {
    bool top = false;
    std::vector<std::uint32_t> c;
};

int cmp_prefix(const Value& a, const Value& b, std::size_t len) {
    if (a.top || b.top) return (a.top ? 1 : 0) - (b.top ? 1 : 0);
    for (std::size_t i = 0; i < len; ++i) {
        if (a.c[i] != b.c[i]) return a.c[i] < b.c[i] ? -1 : 1;
    }
    return 0;
}

// Least m with m >=_q w (strict for odd q); top when no such m exists.
Value prog(const MeasureSpace& space, const Value& w, std::uint32_t q) {
    Value m;
    if (w.top) { m.top = true; return m; }
    m.c.assign(space.dims(), 0);
    const std::size_t len = space.prefix_len(q);
    for (std::size_t i = 0; i < len; ++i) m.c[i] = w.c[i];
    if (q % 2 == 1) {
        // strictly increase within the first `len` components, carrying
        // from the least significant one
        std::size_t i = len;
        while (i-- > 0) {
            if (m.c[i] < space.limits[i]) {
                ++m.c[i];
                for (std::size_t j = i + 1; j < len; ++j) m.c[j] = 0;
                return m;
            }
        }
        m.top = true;
        m.c.clear();
    }
    return m;
}

} // namespace

ParitySolveResult solve_parity(const ParityGame& game) {
    game.validate();
    const std::size_t n = game.size();
    MeasureSpace space(game);

    std::vector<Value> rho(n);
    for (auto& v : rho) v.c.assign(space.dims(), 0);

    std::vector<std::vector<std::uint32_t>> preds(n);
    for (std::uint32_t v = 0; v < n; ++v)
        for (std::uint32_t w : game.moves[v]) preds[w].push_back(v);

    auto lift_value = [&](std::uint32_t v) {
        const std::uint32_t q = game.priority[v];
        Value best;
        bool first = true;
        if (game.owner[v] == Player::Even) {
            best.top = true; // min over successors; empty set of moves -> top
            for (std::uint32_t w : game.moves[v]) {
                Value cand = prog(space, rho[w], q);
                if (first || cmp_prefix(cand, best, space.dims()) < 0) best = cand;
                first = false;
            }
        } else {
            best.c.assign(space.dims(), 0); // max over successors; empty -> least
            for (std::uint32_t w : game.moves[v]) {
                Value cand = prog(space, rho[w], q);
                if (first || cmp_prefix(cand, best, space.dims()) > 0) best = cand;
                first = false;
            }
        }
        return best;
    };

    std::deque<std::uint32_t> queue;
    std::vector<bool> queued(n, true);
    for (std::uint32_t v = 0; v < n; ++v) queue.push_back(v);

    while (!queue.empty()) {
        const std::uint32_t v = queue.front();
        queue.pop_front();
        queued[v] = false;
        Value lifted = lift_value(v);
        if (cmp_prefix(lifted, rho[v], space.dims()) > 0) {
            rho[v] = lifted;
            for (std::uint32_t p : preds[v])
                if (!queued[p]) { queued[p] = true; queue.push_back(p); }
        }
    }

    ParitySolveResult result;
    result.even_wins.resize(n);
    result.even_strategy.assign(n, std::nullopt);
    for (std::uint32_t v = 0; v < n; ++v) {
        result.even_wins[v] = !rho[v].top;
        if (game.owner[v] == Player::Even && !rho[v].top) {
            for (std::uint32_t w : game.moves[v]) {
                Value cand = prog(space, rho[w], game.priority[v]);
                if (cmp_prefix(cand, rho[v], space.dims()) <= 0) {
                    result.even_strategy[v] = w;
                    break;
                }
            }
        }
    }
    result.measure.odd_priorities = space.odd_priorities;
    result.measure.limits = space.limits;
    result.measure.value.resize(n);
    result.measure.top.resize(n);
    for (std::uint32_t v = 0; v < n; ++v) {
        result.measure.top[v] = rho[v].top;
        result.measure.value[v] = rho[v].top ? std::vector<std::uint32_t>(space.dims(), 0) : rho[v].c;
    }
    return result;
}

bool validate_progress_measure(const ParityGame& game, const SmallProgressMeasure& pm) {
    game.validate();
    const std::size_t n = game.size();
    MeasureSpace space(game);
    if (pm.odd_priorities != space.odd_priorities || pm.limits != space.limits)
        throw ValidationError("progress measure priorities are not dimensioned for this game");
    if (pm.value.size() != n || pm.top.size() != n)
        throw ValidationError("progress measure has the wrong number of positions");
    for (std::size_t v = 0; v < n; ++v)
        if (pm.value[v].size() != space.dims())
            throw ValidationError("progress measure tuple has the wrong number of counters");

    auto as_value = [&](std::size_t v) {
        Value val;
        val.top = pm.top[v];
        val.c = pm.value[v];
        return val;
    };

    for (std::uint32_t v = 0; v < n; ++v) {
        if (pm.top[v]) continue;
        for (std::size_t i = 0; i < space.dims(); ++i)
            if (pm.value[v][i] > pm.limits[i]) return false;
        const Value own = as_value(v);
        const std::uint32_t q = game.priority[v];
        bool ok;
        if (game.owner[v] == Player::Even) {
            ok = false;
            for (std::uint32_t w : game.moves[v]) {
                Value need = prog(space, as_value(w), q);
                if (cmp_prefix(need, own, space.dims()) <= 0) { ok = true; break; }
            }
        } else {
            ok = true;
            for (std::uint32_t w : game.moves[v]) {
                Value need = prog(space, as_value(w), q);
                if (cmp_prefix(need, own, space.dims()) > 0) { ok = false; break; }
            }
        }
        if (!ok) return false;
    }
    return true;
}

std::string dump_game(const ParityGame& game, const std::vector<bool>* even_wins) {
    std::ostringstream out;
    for (std::size_t v = 0; v < game.size(); ++v) {
        out << v << ' ' << (game.owner[v] == Player::Even ? "even" : "odd") << ' '
            << game.priority[v] << ' ';
        for (std::size_t i = 0; i < game.moves[v].size(); ++i) {
            if (i) out << ',';
            out << game.moves[v][i];
        }
        if (game.moves[v].empty()) out << '-';
        if (even_wins) out << ' ' << ((*even_wins)[v] ? "even" : "odd");
        if (!game.labels.empty()) out << " \"" << game.labels[v] << '"';
        out << '\n';
    }
    return out.str();
}

} // namespace fairsim

#include "fairsim/matsim.hh"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace fairsim {

SimPartition SimPartition::of(const Pbwa& x, const Pbwa& y) {
    SimPartition p;
    for (std::uint32_t s = 0; s < x.num_states(); ++s)
        (x.accepting(s) ? p.x2 : p.x1).push_back(s);
    for (std::uint32_t s = 0; s < y.num_states(); ++s)
        (y.accepting(s) ? p.y2 : p.y1).push_back(s);
    return p;
}

RMatrix SimPartition::row_slice(const RMatrix& m, const std::vector<std::uint32_t>& rows) {
    RMatrix r(rows.size(), m.cols());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r.at(i, j) = m.at(rows[i], j);
    return r;
}

RMatrix SimPartition::slice(const RMatrix& m, const std::vector<std::uint32_t>& rows,
                            const std::vector<std::uint32_t>& cols) {
    RMatrix r(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) r.at(i, j) = m.at(rows[i], cols[j]);
    return r;
}

RMatrix MatrixWitness::block(const SimPartition& p, int j, int i) const {
    const auto& rows = (j == 1) ? p.y1 : p.y2;
    const auto& cols = (i == 1) ? p.x1 : p.x2;
    return SimPartition::slice(a, rows, cols);
}

namespace {

std::string entry_detail(const Pbwa& aut, std::optional<LetterId> letter, const std::string& row,
                         const std::string& col, const Rational& lhs, const Rational& rhs) {
    std::ostringstream s;
    if (letter) s << "letter " << aut.letter_name(*letter) << ", ";
    s << "entry (" << row << "," << col << "): " << lhs.str() << " > " << rhs.str();
    return s.str();
}

// Y x X matrix whose Y_1 rows carry (b11|b12) and whose Y_2 rows carry
// the fixed (A21|A22) part of the witness, in original state order.
RMatrix assemble_block(const SimPartition& p, const RMatrix& witness, const RMatrix& b11,
                       const RMatrix& b12, std::size_t ny, std::size_t nx) {
    RMatrix full(ny, nx);
    for (std::size_t r = 0; r < p.y1.size(); ++r) {
        for (std::size_t c = 0; c < p.x1.size(); ++c) full.at(p.y1[r], p.x1[c]) = b11.at(r, c);
        for (std::size_t c = 0; c < p.x2.size(); ++c) full.at(p.y1[r], p.x2[c]) = b12.at(r, c);
    }
    for (std::uint32_t y : p.y2)
        for (std::size_t c = 0; c < nx; ++c) full.at(y, c) = witness.at(y, c);
    return full;
}

struct PairContext {
    const Pbwa& x;
    const Pbwa& y;
    SimPartition part;
    std::vector<RMatrix> mx1, mx2, my1; // per letter: M_{X,1}, M_{X,2}, M_{Y,1}

    PairContext(const Pbwa& x, const Pbwa& y) : x(x), y(y), part(SimPartition::of(x, y)) {
        if (!x.same_alphabet(y))
            throw ValidationError("matrix simulation requires the same alphabet on both sides");
        for (LetterId a = 0; a < x.num_letters(); ++a) {
            mx1.push_back(SimPartition::row_slice(x.matrix(a), part.x1));
            mx2.push_back(SimPartition::row_slice(x.matrix(a), part.x2));
            my1.push_back(SimPartition::row_slice(y.matrix(a), part.y1));
        }
    }

    RMatrix assemble(const RMatrix& b11, const RMatrix& b12, const RMatrix& witness) const {
        return assemble_block(part, witness, b11, b12, y.num_states(), x.num_states());
    }

    // first entry where lhs > rhs, as a diagnostic string
    std::optional<std::string> exceeds(const RMatrix& lhs, const RMatrix& rhs, LetterId a,
                                       const std::vector<std::uint32_t>& row_states) const {
        for (std::size_t r = 0; r < lhs.rows(); ++r)
            for (std::size_t c = 0; c < lhs.cols(); ++c)
                if (lhs.at(r, c) > rhs.at(r, c))
                    return entry_detail(x, a, y.state_name(row_states[r]), x.state_name(c),
                                        lhs.at(r, c), rhs.at(r, c));
        return std::nullopt;
    }
};

} // namespace

ProbCheckResult verify_forward_sim(const Pbwa& x, const Pbwa& y, const MatrixWitness& w) {
    ProbCheckResult res;
    if (w.a.rows() != y.num_states() || w.a.cols() != x.num_states())
        throw ValidationError("witness matrix dimensions do not match the automata");
    if (!x.same_alphabet(y))
        throw ValidationError("matrix simulation requires the same alphabet on both sides");

    for (std::size_t r = 0; r < w.a.rows(); ++r) {
        for (std::size_t c = 0; c < w.a.cols(); ++c)
            if (!w.a.at(r, c).in_unit_interval()) {
                res.violated = "1-substochastic";
                res.detail = "entry (" + y.state_name(r) + "," + x.state_name(c) + ") outside [0,1]";
                return res;
            }
        if (w.a.row_sum(r) > Rational::one()) {
            res.violated = "1-substochastic";
            res.detail = "row " + y.state_name(r) + " has mass " + w.a.row_sum(r).str() + " > 1";
            return res;
        }
    }

    RVec iota_ya = vec_mat(y.initial(), w.a);
    for (std::size_t c = 0; c < x.num_states(); ++c)
        if (x.initial()[c] > iota_ya[c]) {
            res.violated = "2-initial";
            res.detail = "state " + x.state_name(c) + ": " + x.initial()[c].str() + " > " +
                         iota_ya[c].str();
            return res;
        }

    for (LetterId a = 0; a < x.num_letters(); ++a) {
        RMatrix lhs = w.a * x.matrix(a);
        RMatrix rhs = y.matrix(a) * w.a;
        for (std::size_t r = 0; r < lhs.rows(); ++r)
            for (std::size_t c = 0; c < lhs.cols(); ++c)
                if (lhs.at(r, c) > rhs.at(r, c)) {
                    res.violated = "2-step";
                    res.detail = entry_detail(x, a, y.state_name(r), x.state_name(c),
                                              lhs.at(r, c), rhs.at(r, c));
                    return res;
                }
    }
    res.holds = true;
    return res;
}

ProbCheckResult verify_matrix_fair_sim(const Pbwa& x, const Pbwa& y, const MatrixWitness& w,
                                       const ApproxSequences& seqs) {
    ProbCheckResult res = verify_forward_sim(x, y, w);
    if (!res.holds) return res;
    res.holds = false;

    PairContext ctx(x, y);
    const SimPartition& p = ctx.part;
    const RMatrix a11 = w.block(p, 1, 1), a12 = w.block(p, 1, 2);

    if (seqs.a11.size() != seqs.a12.size() || seqs.a11.empty()) {
        res.violated = "3-presentation";
        res.detail = "sequences must present the same nonzero number of indices";
        return res;
    }
    auto dims_ok = [&](const RMatrix& m, std::size_t cols) {
        return m.rows() == p.y1.size() && m.cols() == cols;
    };
    for (std::size_t i = 0; i < seqs.a11.size(); ++i)
        if (!dims_ok(seqs.a11[i], p.x1.size()) || !dims_ok(seqs.a12[i], p.x2.size()))
            throw ValidationError("approximation sequence dimensions do not match the blocks");
    if (seqs.omega() &&
        (!dims_ok(seqs.omega_limit->first, p.x1.size()) ||
         !dims_ok(seqs.omega_limit->second, p.x2.size())))
        throw ValidationError("limit pair dimensions do not match the blocks");

    for (std::size_t i = 0; i + 1 < seqs.a11.size(); ++i)
        if (!RMatrix::leq(seqs.a11[i], seqs.a11[i + 1]) ||
            !RMatrix::leq(seqs.a12[i], seqs.a12[i + 1])) {
            res.violated = "3-increasing";
            res.detail = "sequence not entrywise non-decreasing at index " + std::to_string(i);
            return res;
        }
    if (seqs.omega() && (!RMatrix::leq(seqs.a11.back(), seqs.omega_limit->first) ||
                         !RMatrix::leq(seqs.a12.back(), seqs.omega_limit->second))) {
        res.violated = "3-increasing";
        res.detail = "presented prefix exceeds the limit pair";
        return res;
    }

    if (!(seqs.final11() == a11) || !(seqs.final12() == a12)) {
        res.violated = "3b-final";
        res.detail = "final sequence elements differ from the A11/A12 blocks";
        return res;
    }

    if (!(seqs.a12.front() == RMatrix::zero(p.y1.size(), p.x2.size()))) {
        res.violated = "3d-base";
        res.detail = "A12 sequence does not start at the zero matrix";
        return res;
    }

    auto check_3c = [&](const RMatrix& s11, const RMatrix& s12,
                        const std::string& where) -> bool {
        RMatrix blockm = ctx.assemble(s11, s12, w.a);
        for (LetterId a = 0; a < x.num_letters(); ++a) {
            if (auto bad = ctx.exceeds(s11 * ctx.mx1[a], ctx.my1[a] * blockm, a, p.y1)) {
                res.violated = "3c";
                res.detail = where + ": " + *bad;
                return false;
            }
        }
        return true;
    };
    auto check_step = [&](const RMatrix& next12, const RMatrix& s11, const RMatrix& s12,
                          const std::string& where) -> bool {
        RMatrix blockm = ctx.assemble(s11, s12, w.a);
        for (LetterId a = 0; a < x.num_letters(); ++a) {
            if (auto bad = ctx.exceeds(next12 * ctx.mx2[a], ctx.my1[a] * blockm, a, p.y1)) {
                res.violated = "3e-step";
                res.detail = where + ": " + *bad;
                return false;
            }
        }
        return true;
    };

    for (std::size_t i = 0; i < seqs.a11.size(); ++i)
        if (!check_3c(seqs.a11[i], seqs.a12[i], "index " + std::to_string(i))) return res;
    for (std::size_t i = 0; i + 1 < seqs.a11.size(); ++i)
        if (!check_step(seqs.a12[i + 1], seqs.a11[i], seqs.a12[i],
                        "index " + std::to_string(i))) return res;
    if (seqs.omega()) {
        // limit pair: the 3c invariant and the step-consistency inequality
        // certify the supplied supremum (finitely checkable presentation)
        if (!check_3c(seqs.omega_limit->first, seqs.omega_limit->second, "limit")) return res;
        if (!check_step(seqs.omega_limit->second, seqs.omega_limit->first,
                        seqs.omega_limit->second, "limit")) {
            res.violated = "3f-limit";
            return res;
        }
    }

    res.holds = true;
    return res;
}

namespace {

// One column constraint of a step system: sum of coef_i * v_i over the
// free entries of a row, bounded by an affine function of the current
// pair. Greedy maximization handles the coupled case; the limit solver
// requires every constraint to touch at most one free entry.
struct StepSystem {
    const PairContext& ctx;
    const RMatrix& witness;
    bool for_a12; // otherwise A11

    explicit StepSystem(const PairContext& ctx, const RMatrix& witness, bool for_a12)
        : ctx(ctx), witness(witness), for_a12(for_a12) {}

    const std::vector<std::uint32_t>& free_states() const {
        return for_a12 ? ctx.part.x2 : ctx.part.x1;
    }
    const RMatrix& mx(LetterId a) const { return for_a12 ? ctx.mx2[a] : ctx.mx1[a]; }

    // Entrywise-largest row values <= cap satisfying
    //   v * mx(a) <= my1(a) * assemble(cur11, cur12)  for all letters,
    // starting from the feasible floor; entries pushed in state order.
    RMatrix push(const RMatrix& floor, const RMatrix& cap, const RMatrix& cur11,
                 const RMatrix& cur12) const {
        const auto& cols = free_states();
        RMatrix out = floor;
        std::vector<RMatrix> bounds;
        for (LetterId a = 0; a < ctx.x.num_letters(); ++a)
            bounds.push_back(ctx.my1[a] * ctx.assemble(cur11, cur12, witness));
        for (std::size_t r = 0; r < out.rows(); ++r) {
            for (std::size_t c = 0; c < cols.size(); ++c) {
                Rational best = cap.at(r, c);
                for (LetterId a = 0; a < ctx.x.num_letters(); ++a) {
                    for (std::size_t t = 0; t < ctx.x.num_states(); ++t) {
                        const Rational& coef = mx(a).at(c, t);
                        if (coef.is_zero()) continue;
                        Rational slack = bounds[a].at(r, t);
                        for (std::size_t c2 = 0; c2 < cols.size(); ++c2)
                            if (c2 != c && !mx(a).at(c2, t).is_zero())
                                slack -= mx(a).at(c2, t) * out.at(r, c2);
                        Rational limit = slack / coef;
                        if (limit < best) best = limit;
                    }
                }
                if (best > out.at(r, c)) out.at(r, c) = best;
            }
        }
        return out;
    }

    // No two free entries share a constraint column: the step map is then
    // an entrywise min of affine functions of the current pair.
    bool uncoupled() const {
        const auto& cols = free_states();
        for (LetterId a = 0; a < ctx.x.num_letters(); ++a)
            for (std::size_t t = 0; t < ctx.x.num_states(); ++t) {
                int touched = 0;
                for (std::size_t c = 0; c < cols.size(); ++c)
                    if (!mx(a).at(c, t).is_zero()) ++touched;
                if (touched > 1) return false;
            }
        return true;
    }
};

// Affine function of the stacked free entries (A11 row-major, then A12
// row-major); coefficients stay nonnegative throughout the search.
struct AffineForm {
    Rational constant;
    RVec coeff;

    explicit AffineForm(std::size_t dims) : coeff(dims) {}
};

struct LimitSolver {
    const PairContext& ctx;
    const RMatrix& witness;
    std::size_t n11, n12, dims;

    LimitSolver(const PairContext& ctx, const RMatrix& witness)
        : ctx(ctx), witness(witness) {
        n11 = ctx.part.y1.size() * ctx.part.x1.size();
        n12 = ctx.part.y1.size() * ctx.part.x2.size();
        dims = n11 + n12;
    }

    std::size_t var11(std::size_t r, std::size_t c) const { return r * ctx.part.x1.size() + c; }
    std::size_t var12(std::size_t r, std::size_t c) const {
        return n11 + r * ctx.part.x2.size() + c;
    }

    // my1(a) * assemble(vars) at (row r over Y1, column t over X)
    AffineForm bound_form(LetterId a, std::size_t r, std::size_t t) const {
        AffineForm f(dims);
        const auto& my1 = ctx.my1[a];
        for (std::size_t yc = 0; yc < ctx.y.num_states(); ++yc) {
            const Rational& w = my1.at(r, yc);
            if (w.is_zero()) continue;
            if (ctx.y.accepting(yc)) {
                f.constant += w * witness.at(yc, t);
            } else {
                // position of yc inside Y1
                std::size_t yr = std::lower_bound(ctx.part.y1.begin(), ctx.part.y1.end(), yc) -
                                 ctx.part.y1.begin();
                // column t inside X1 or X2
                bool in_x2 = ctx.x.accepting(static_cast<std::uint32_t>(t));
                const auto& lst = in_x2 ? ctx.part.x2 : ctx.part.x1;
                std::size_t xc = std::lower_bound(lst.begin(), lst.end(), t) - lst.begin();
                f.coeff[in_x2 ? var12(yr, xc) : var11(yr, xc)] += w;
            }
        }
        return f;
    }
};

RMatrix flatten11(const LimitSolver& ls, const RVec& z) {
    RMatrix m(ls.ctx.part.y1.size(), ls.ctx.part.x1.size());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) m.at(r, c) = z[ls.var11(r, c)];
    return m;
}

RMatrix flatten12(const LimitSolver& ls, const RVec& z) {
    RMatrix m(ls.ctx.part.y1.size(), ls.ctx.part.x2.size());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) m.at(r, c) = z[ls.var12(r, c)];
    return m;
}

} // namespace

std::optional<ApproxSequences> search_sequences(const Pbwa& x, const Pbwa& y,
                                                const MatrixWitness& w,
                                                std::uint32_t iteration_cap) {
    {
        ProbCheckResult pre = verify_forward_sim(x, y, w);
        if (!pre.holds)
            throw ValidationError("search_sequences requires conditions 1-2 (" + pre.violated +
                                  ": " + pre.detail + ")");
    }
    PairContext ctx(x, y);
    const SimPartition& p = ctx.part;
    const RMatrix cap11 = w.block(p, 1, 1), cap12 = w.block(p, 1, 2);
    const RMatrix zero11 = RMatrix::zero(p.y1.size(), p.x1.size());
    const RMatrix zero12 = RMatrix::zero(p.y1.size(), p.x2.size());

    StepSystem sys11(ctx, w.a, /*for_a12=*/false);
    StepSystem sys12(ctx, w.a, /*for_a12=*/true);

    if (cap12 == zero12) {
        // the zero base already is the final A12; a constant one-element
        // presentation suffices whenever it passes
        ApproxSequences trivial;
        trivial.a11.push_back(cap11);
        trivial.a12.push_back(zero12);
        if (verify_matrix_fair_sim(x, y, w, trivial).holds) return trivial;
    }

    ApproxSequences seqs;
    RMatrix cur11 = sys11.push(zero11, cap11, zero11, zero12);
    RMatrix cur12 = zero12;
    seqs.a11.push_back(cur11);
    seqs.a12.push_back(cur12);

    const bool uncoupled = sys11.uncoupled() && sys12.uncoupled();

    auto finish = [&](ApproxSequences out) -> std::optional<ApproxSequences> {
        ProbCheckResult check = verify_matrix_fair_sim(x, y, w, out);
        if (!check.holds) return std::nullopt; // search produced an invalid witness: inconclusive
        return out;
    };

    for (std::uint32_t step = 0; step < iteration_cap; ++step) {
        RMatrix next12 = sys12.push(cur12, cap12, cur11, cur12);
        RMatrix next11 = sys11.push(cur11, cap11, cur11, next12);
        if (!RMatrix::leq(cur11, next11) || !RMatrix::leq(cur12, next12))
            throw Error("internal error: search iteration is not monotone");

        if (next11 == cur11 && next12 == cur12) {
            // exact fixed point; success when the target was reached, a
            // stall below it is inconclusive
            if (cur11 == cap11 && cur12 == cap12) return finish(seqs);
            return std::nullopt;
        }
        seqs.a11.push_back(next11);
        seqs.a12.push_back(next12);

        // Attempt exact limit certification once two consecutive steps
        // agree on the set of active affine branches (uncoupled systems
        // only; the coupled greedy has no affine presentation).
        if (uncoupled && step >= 1) {
            auto limit = [&]() -> std::optional<std::pair<RMatrix, RMatrix>> {
                LimitSolver ls(ctx, w.a);
                // branch selection for each entry at the last iterate:
                // cap or the (letter, column) constraint achieving the min
                std::vector<AffineForm> forms;
                forms.reserve(ls.dims);
                auto entry_form = [&](const StepSystem& sys, const RMatrix& cap, std::size_t r,
                                      std::size_t c, const RMatrix& at11, const RMatrix& at12,
                                      const std::vector<AffineForm>* sub12) -> AffineForm {
                    // evaluate all branches at the probe point, keep the min
                    Rational best = cap.at(r, c);
                    std::optional<std::pair<LetterId, std::size_t>> best_branch;
                    for (LetterId a = 0; a < ctx.x.num_letters(); ++a) {
                        RMatrix bound = ctx.my1[a] * ctx.assemble(at11, at12, w.a);
                        for (std::size_t t = 0; t < ctx.x.num_states(); ++t) {
                            const Rational& coef = sys.mx(a).at(c, t);
                            if (coef.is_zero()) continue;
                            Rational val = bound.at(r, t) / coef;
                            if (val < best) {
                                best = val;
                                best_branch = std::make_pair(a, t);
                            }
                        }
                    }
                    if (!best_branch) {
                        AffineForm f(ls.dims);
                        f.constant = cap.at(r, c);
                        return f;
                    }
                    auto [a, t] = *best_branch;
                    AffineForm bf = ls.bound_form(a, r, t);
                    const Rational& coef = sys.mx(a).at(c, t);
                    bf.constant /= coef;
                    for (auto& q : bf.coeff) q /= coef;
                    // Gauss-Seidel: the A11 step reads the just-updated
                    // A12 forms instead of the raw variables
                    if (sub12) {
                        AffineForm g(ls.dims);
                        g.constant = bf.constant;
                        for (std::size_t v = 0; v < ls.dims; ++v) {
                            if (bf.coeff[v].is_zero()) continue;
                            if (v >= ls.n11) {
                                const AffineForm& s = (*sub12)[v - ls.n11];
                                g.constant += bf.coeff[v] * s.constant;
                                for (std::size_t u = 0; u < ls.dims; ++u)
                                    g.coeff[u] += bf.coeff[v] * s.coeff[u];
                            } else {
                                g.coeff[v] += bf.coeff[v];
                            }
                        }
                        return g;
                    }
                    return bf;
                };

                std::vector<AffineForm> forms12;
                for (std::size_t r = 0; r < p.y1.size(); ++r)
                    for (std::size_t c = 0; c < p.x2.size(); ++c)
                        forms12.push_back(entry_form(sys12, cap12, r, c, cur11, cur12, nullptr));
                std::vector<AffineForm> forms11;
                for (std::size_t r = 0; r < p.y1.size(); ++r)
                    for (std::size_t c = 0; c < p.x1.size(); ++c)
                        forms11.push_back(entry_form(sys11, cap11, r, c, cur11, next12, &forms12));

                // stack: A11 vars first, then A12
                RMatrix lin(ls.dims, ls.dims);
                RVec cons(ls.dims);
                for (std::size_t v = 0; v < ls.n11; ++v) {
                    cons[v] = forms11[v].constant;
                    for (std::size_t u = 0; u < ls.dims; ++u) lin.at(v, u) = forms11[v].coeff[u];
                }
                for (std::size_t v = 0; v < ls.n12; ++v) {
                    cons[ls.n11 + v] = forms12[v].constant;
                    for (std::size_t u = 0; u < ls.dims; ++u)
                        lin.at(ls.n11 + v, u) = forms12[v].coeff[u];
                }

                // unique fixed point of the affine branch map
                RMatrix eye_minus(ls.dims, ls.dims);
                for (std::size_t i = 0; i < ls.dims; ++i)
                    for (std::size_t j = 0; j < ls.dims; ++j) {
                        eye_minus.at(i, j) = -lin.at(i, j);
                        if (i == j) eye_minus.at(i, j) += Rational::one();
                    }
                auto fix = solve_linear(eye_minus, cons);
                if (!fix) return std::nullopt;

                // spectral radius < 1 via a positive dominance vector
                auto dom = solve_linear(eye_minus, RVec(ls.dims, Rational::one()));
                if (!dom) return std::nullopt;
                for (const Rational& d : *dom)
                    if (!(d >= Rational::one())) return std::nullopt;

                RMatrix lim11 = flatten11(ls, *fix), lim12 = flatten12(ls, *fix);
                if (!RMatrix::leq(next11, lim11) || !RMatrix::leq(next12, lim12))
                    return std::nullopt;
                if (!(lim11 == cap11) || !(lim12 == cap12)) return std::nullopt;
                // the concrete step map must fix the limit
                if (!(sys12.push(lim12, cap12, lim11, lim12) == lim12)) return std::nullopt;
                if (!(sys11.push(lim11, cap11, lim11, lim12) == lim11)) return std::nullopt;
                return std::make_pair(lim11, lim12);
            }();
            if (limit) {
                seqs.omega_limit = *limit;
                return finish(seqs);
            }
        }
        cur11 = std::move(next11);
        cur12 = std::move(next12);
    }
    return std::nullopt; // cap reached without certification: inconclusive
}

Pbwa accepting_closure(const Pbwa& y) {
    const std::size_t n = y.num_states();
    // states with a positive-probability path (of length >= 1 for the
    // non-accepting ones) into the accepting set
    std::vector<bool> reach = y.accepting_set();
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (reach[i]) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (!y.chain_matrix().at(i, j).is_zero() && reach[j]) {
                    reach[i] = true;
                    changed = true;
                    break;
                }
        }
    }
    return y.with_accepting(std::move(reach));
}

} // namespace fairsim

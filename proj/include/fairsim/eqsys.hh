#ifndef FAIRSIM_EQSYS_HH
#define FAIRSIM_EQSYS_HH

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fairsim/error.hh"

// Equational systems with mixed least/greatest fixed points over finite
// lattices. A system is an ordered list of equations
//
//     u_1 =_{s_1} f_1(u_1,...,u_m),  ...,  u_m =_{s_m} f_m(u_1,...,u_m)
//
// with s_i either a least or a greatest fixed point marker. The order of
// equations is significant: the system is solved left to right by
// eliminating variables through interim solutions, and the closed values
// are then propagated back right to left.

namespace fairsim::eqsys {

enum class Sign { Least, Greatest };

// Finite lattice over values of type V. V must be regular and
// equality-comparable; equality is the canonical-encoding comparison and
// must agree with mutual leq. The element enumeration is optional
// diagnostic machinery (tests, monotonicity sampling); the solver never
// calls it.
template <typename V>
struct FiniteLattice {
    V bottom;
    V top;
    std::function<bool(const V&, const V&)> leq;
    std::function<V(const V&, const V&)> join;
    std::function<V(const V&, const V&)> meet;
    std::function<std::vector<V>()> elements;
};

template <typename V>
struct Equation {
    Sign sign = Sign::Greatest;
    FiniteLattice<V> lattice;
    std::function<V(std::span<const V>)> rhs; // receives all m current values
};

template <typename V>
struct EquationalSystem {
    std::vector<Equation<V>> equations;
};

template <typename V>
using Solution = std::vector<V>;

// Kleene iteration from bottom (least) or top (greatest). Terminates on a
// finite lattice; the iterates must form a chain, otherwise f was not
// monotone and we fail loudly rather than return garbage.
template <typename V>
V kleene_fixpoint(const FiniteLattice<V>& lattice, const std::function<V(const V&)>& f,
                  Sign mode) {
    V current = (mode == Sign::Least) ? lattice.bottom : lattice.top;
    for (;;) {
        V next = f(current);
        if (next == current) return current;
        bool ascending = lattice.leq(current, next);
        bool descending = lattice.leq(next, current);
        if (mode == Sign::Least && !ascending)
            throw MonotonicityError(descending
                                        ? "kleene_fixpoint: value decreased in an lfp ascent"
                                        : "kleene_fixpoint: iterates left the chain in an lfp ascent");
        if (mode == Sign::Greatest && !descending)
            throw MonotonicityError(ascending
                                        ? "kleene_fixpoint: value increased in a gfp descent"
                                        : "kleene_fixpoint: iterates left the chain in a gfp descent");
        current = std::move(next);
    }
}

namespace detail {

// Solves the first `count` equations given concrete values for the
// remaining variables (already stored in `values[count..m)`), writing the
// interim solutions into `values[0..count)`. This is the left-to-right
// elimination with right-to-left back-propagation: the fixed point for
// equation `count` re-solves the prefix at every iterate.
template <typename V>
void solve_prefix(const EquationalSystem<V>& system, std::size_t count, std::vector<V>& values) {
    if (count == 0) return;
    const std::size_t i = count - 1;
    const Equation<V>& eq = system.equations[i];
    auto eliminated = [&](const V& candidate) {
        values[i] = candidate;
        solve_prefix(system, i, values);
        return eq.rhs(std::span<const V>(values));
    };
    V solved = kleene_fixpoint<V>(eq.lattice, eliminated, eq.sign);
    values[i] = solved;
    solve_prefix(system, i, values);
}

} // namespace detail

// Unique solution of the system. On finite lattices every required fixed
// point exists, so the only failure mode is a monotonicity violation
// detected during iteration.
template <typename V>
Solution<V> solve(const EquationalSystem<V>& system) {
    std::vector<V> values;
    values.reserve(system.equations.size());
    for (const auto& eq : system.equations) values.push_back(eq.lattice.bottom);
    detail::solve_prefix(system, system.equations.size(), values);
    return values;
}

// Exact fixed-point recheck: values[i] == f_i(values) for every i.
template <typename V>
bool is_solution(const EquationalSystem<V>& system, const Solution<V>& values) {
    if (values.size() != system.equations.size()) return false;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (!(system.equations[i].rhs(std::span<const V>(values)) == values[i])) return false;
    return true;
}

} // namespace fairsim::eqsys

#endif

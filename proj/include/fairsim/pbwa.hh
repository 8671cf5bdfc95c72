#ifndef FAIRSIM_PBWA_HH
#define FAIRSIM_PBWA_HH

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fairsim/error.hh"
#include "fairsim/linalg.hh"
#include "fairsim/rational.hh"

namespace fairsim {

using LetterId = std::uint32_t;
using Word = std::vector<LetterId>;

// Generative probabilistic Buechi word automaton over exact rationals.
// Substochasticity (sum over all letters and targets of each row <= 1,
// initial mass <= 1) is validated at construction; the missing mass
// models divergence.
class Pbwa {
public:
    Pbwa(std::vector<std::string> letters, std::vector<std::string> state_names,
         std::vector<RMatrix> matrices, RVec initial, std::vector<bool> accepting);

    std::size_t num_states() const { return state_names_.size(); }
    std::size_t num_letters() const { return letters_.size(); }
    const std::string& state_name(std::uint32_t x) const { return state_names_[x]; }
    const std::string& letter_name(LetterId a) const { return letters_[a]; }
    std::optional<std::uint32_t> find_state(const std::string& name) const;
    std::optional<LetterId> find_letter(const std::string& name) const;
    bool same_alphabet(const Pbwa& other) const { return letters_ == other.letters_; }

    const RMatrix& matrix(LetterId a) const { return matrices_[a]; }
    const RVec& initial() const { return initial_; }
    bool accepting(std::uint32_t x) const { return accepting_[x]; }
    const std::vector<bool>& accepting_set() const { return accepting_; }
    std::vector<std::uint32_t> accepting_states() const;

    // Letter-summed transition matrix P(x,x') = sum_a M(a)(x,x').
    const RMatrix& chain_matrix() const { return chain_; }
    // 1 - row mass: probability of diverging in one step.
    const RVec& leak() const { return leak_; }

    // Same automaton with a different accepting set.
    Pbwa with_accepting(std::vector<bool> accepting) const;

private:
    std::vector<std::string> letters_;
    std::vector<std::string> state_names_;
    std::vector<RMatrix> matrices_;
    RVec initial_;
    std::vector<bool> accepting_;
    RMatrix chain_;
    RVec leak_;
};

// k-fold iterate of the no-divergence recurrence; pointwise non-increasing
// in k and convergent to nodiv().
RVec nodiv_k(const Pbwa& aut, std::uint32_t k);

// Exact limit, computed as 1 - Pr(reach the divergence sink) by graph
// analysis plus one rational linear solve; no truncated iteration.
RVec nodiv(const Pbwa& aut);

// Bottom strongly connected components of the chain view over X + {sink}.
struct Bscc {
    std::vector<std::uint32_t> states; // ascending
    bool sink = false;                 // component is {divergence sink}
};
std::vector<Bscc> bsccs(const Pbwa& aut);

// acc(x) = Pr(x satisfies GF Acc) = Pr(reach the union of BSCCs that meet
// the accepting set); exact.
RVec acceptance_vector(const Pbwa& aut);

// L(aut)(Cyl(w)) = iota * M(w_1) * ... * M(w_k) * acc, exact.
Rational cylinder_prob(const Pbwa& aut, const Word& w);

} // namespace fairsim

#endif

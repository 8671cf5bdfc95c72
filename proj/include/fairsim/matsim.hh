#ifndef FAIRSIM_MATSIM_HH
#define FAIRSIM_MATSIM_HH

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fairsim/linalg.hh"
#include "fairsim/pbwa.hh"

namespace fairsim {

// Accepting-partition bookkeeping for a simulation pair: X_1/X_2 are the
// non-accepting/accepting states of the challenger, Y_1/Y_2 of the
// simulator. Blocks of the witness matrix follow this split.
struct SimPartition {
    std::vector<std::uint32_t> x1, x2, y1, y2;

    static SimPartition of(const Pbwa& x, const Pbwa& y);

    // rows restricted to a state list, all columns kept
    static RMatrix row_slice(const RMatrix& m, const std::vector<std::uint32_t>& rows);
    // rows and columns restricted
    static RMatrix slice(const RMatrix& m, const std::vector<std::uint32_t>& rows,
                         const std::vector<std::uint32_t>& cols);
};

// Candidate simulation matrix A over Y x X with block views A_{ji} over
// Y_j x X_i induced by the accepting partitions.
struct MatrixWitness {
    RMatrix a;

    RMatrix block(const SimPartition& p, int j, int i) const;
};

// Finitely presented approximation sequences for the A_11/A_12 blocks:
// entries indexed 0..n-1, entrywise non-decreasing, with A_12 starting at
// the zero matrix. Either the last presented pair is the final element
// (bound n-1 < omega), or an exactly computed limit pair is attached
// (bound = omega).
struct ApproxSequences {
    std::vector<RMatrix> a11; // each Y_1 x X_1
    std::vector<RMatrix> a12; // each Y_1 x X_2
    std::optional<std::pair<RMatrix, RMatrix>> omega_limit;

    bool omega() const { return omega_limit.has_value(); }
    const RMatrix& final11() const { return omega() ? omega_limit->first : a11.back(); }
    const RMatrix& final12() const { return omega() ? omega_limit->second : a12.back(); }
};

struct ProbCheckResult {
    bool holds = false;
    std::string violated; // condition identifier, empty when holds
    std::string detail;   // letter and entry of the first violation
};

// Conditions 1-2 alone: substochastic rows and the forward-simulation
// inequalities iota_X <= iota_Y A and A M_X(a) <= M_Y(a) A.
ProbCheckResult verify_forward_sim(const Pbwa& x, const Pbwa& y, const MatrixWitness& w);

// Full matrix fair simulation: conditions 1-2 plus the approximation
// sequence obligations (final elements, 3c invariants, zero base, step
// inequalities, and the limit-consistency inequalities when the bound is
// omega).
ProbCheckResult verify_matrix_fair_sim(const Pbwa& x, const Pbwa& y, const MatrixWitness& w,
                                       const ApproxSequences& seqs);

// Maximal monotone iteration for the sequences of Def-4.14 shape. Sound
// but not complete: a returned presentation always passes
// verify_matrix_fair_sim; nullopt is inconclusive. Requires conditions
// 1-2 to hold (throws ValidationError otherwise).
std::optional<ApproxSequences> search_sequences(const Pbwa& x, const Pbwa& y,
                                                const MatrixWitness& w,
                                                std::uint32_t iteration_cap = 256);

// Promotes every non-accepting state with a positive-probability path to
// an accepting state. Language-preserving; idempotent.
Pbwa accepting_closure(const Pbwa& y);

} // namespace fairsim

#endif

#ifndef FAIRSIM_RANDOM_SUITE_HH
#define FAIRSIM_RANDOM_SUITE_HH

#include <cstdint>
#include <string>
#include <vector>

#include "fairsim/matsim.hh"
#include "fairsim/nbta.hh"
#include "fairsim/parity.hh"
#include "fairsim/pbwa.hh"

namespace fairsim {

// Deterministic generator: splitmix64 stream, identical across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, bound)
    std::uint64_t below(std::uint64_t bound) { return bound ? next() % bound : 0; }
    bool chance(std::uint32_t percent) { return below(100) < percent; }

private:
    std::uint64_t state_;
};

struct SuiteLimits {
    std::uint32_t max_states = 4;
    std::uint32_t max_symbols = 2; // tree symbols or word letters
    std::uint32_t max_arity = 2;
};

Nbta random_nbta(Rng& rng, const SuiteLimits& limits, bool unary_only = false);
// challenger/simulator pair over a shared alphabet; unary with some
// probability so the lasso oracle path is exercised
std::pair<Nbta, Nbta> random_nbta_pair(Rng& rng, const SuiteLimits& limits);

Pbwa random_pbwa(Rng& rng, const SuiteLimits& limits);
// (X, Y, A) with Y built to dominate X often enough that searched
// witnesses get accepted regularly; rejected candidates exercise the
// failure paths
struct ProbCandidate {
    Pbwa x;
    Pbwa y;
    MatrixWitness witness;
};
ProbCandidate random_prob_candidate(Rng& rng, const SuiteLimits& limits);

ParityGame random_parity_game(Rng& rng, std::uint32_t max_positions, std::uint32_t max_priority);

// Positional-strategy enumeration; exponential, for games of a handful of
// positions only. Independent of the progress-measure solver.
std::vector<bool> brute_force_parity(const ParityGame& game);

// Cross-validation and soundness runs behind the `suite` command and the
// acceptance criteria.
struct NdSuiteOutcome {
    std::uint32_t instances = 0;
    std::uint32_t sims_found = 0;
    std::uint32_t agreements = 0;
    std::uint32_t prefix_checked = 0;
    std::uint32_t lasso_checked = 0;
    std::vector<std::string> violations;
};
NdSuiteOutcome run_nd_suite(std::uint64_t seed, std::uint32_t count, const SuiteLimits& limits,
                            std::uint32_t prefix_depth = 4, std::uint32_t lasso_bound = 4);

struct ProbSuiteOutcome {
    std::uint32_t instances = 0;
    std::uint32_t forward_ok = 0; // conditions 1-2 held
    std::uint32_t accepted = 0;   // search found a verified witness
    std::vector<std::string> violations;
};
ProbSuiteOutcome run_prob_suite(std::uint64_t seed, std::uint32_t count, const SuiteLimits& limits,
                                std::uint32_t cylinder_len = 6);

} // namespace fairsim

#endif

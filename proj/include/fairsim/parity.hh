#ifndef FAIRSIM_PARITY_HH
#define FAIRSIM_PARITY_HH

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fairsim/error.hh"

namespace fairsim {

enum class Player { Even, Odd };

// Max-parity game: Even wins a play iff the maximum priority occurring
// infinitely often is even. A player who cannot move loses.
struct ParityGame {
    std::vector<Player> owner;
    std::vector<std::uint32_t> priority;
    std::vector<std::vector<std::uint32_t>> moves;
    std::vector<std::string> labels; // optional, for dumps

    std::size_t size() const { return owner.size(); }
    void validate() const; // moves in range, containers consistent
};

// Jurdzinski progress measure: one counter per odd priority, bounded by
// the number of positions carrying that priority, plus a distinguished
// top. Counters are ordered with higher priorities more significant; the
// comparison at priority q truncates to components of priority >= q.
struct SmallProgressMeasure {
    std::vector<std::uint32_t> odd_priorities; // descending
    std::vector<std::uint32_t> limits;         // per odd priority
    std::vector<std::vector<std::uint32_t>> value; // per position; counters
    std::vector<bool> top;
};

struct ParitySolveResult {
    std::vector<bool> even_wins;
    // positional strategy on Even-owned, Even-winning positions
    std::vector<std::optional<std::uint32_t>> even_strategy;
    SmallProgressMeasure measure;
};

ParitySolveResult solve_parity(const ParityGame& game);

// Local lifting inequalities at every non-top position. Throws
// ValidationError when the measure is not dimensioned for the game.
bool validate_progress_measure(const ParityGame& game, const SmallProgressMeasure& pm);

// Textual dump: one line per position with owner, priority, successors
// and (when provided) the winner.
std::string dump_game(const ParityGame& game, const std::vector<bool>* even_wins = nullptr);

} // namespace fairsim

#endif

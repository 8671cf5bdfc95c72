#ifndef FAIRSIM_SIMGAME_HH
#define FAIRSIM_SIMGAME_HH

#include <cstdint>
#include <vector>

#include "fairsim/nbta.hh"
#include "fairsim/parity.hh"

namespace fairsim {

// Fair-simulation parity game between a challenger X and a simulator Y.
// Positions are materialized lazily from the start position:
//   *                      Odd   prio 0   moves to I_X
//   x in X                 Even  prio 0   moves to (x,y), y in I_Y
//   (x,y) in X x Y         Odd   prio 0/1/2 per block   moves to (a,y), a in delta_X(x)
//   (a,y) in FX x Y        Even  prio 0   moves to pair vectors via delta_Y(y)
//   ((x1,y1)..(xk,yk))     Odd   prio 0   moves to the components
// Even wins from * iff a fair simulation from X to Y exists.
struct SimulationGame {
    ParityGame game;
    std::uint32_t start = 0;
};

SimulationGame build_simulation_game(const Nbta& x, const Nbta& y);

// Nonemptiness of the Buechi tree language per state, as a two-priority
// game: Even picks transition tuples, Odd picks child directions;
// accepting states carry priority 2, the rest priority 1.
struct NonemptinessResult {
    ParityGame game;
    std::vector<std::uint32_t> state_position; // automaton state -> game position
    std::vector<bool> nonempty;                // per automaton state
};

NonemptinessResult nonemptiness_game(const Nbta& x);

} // namespace fairsim

#endif

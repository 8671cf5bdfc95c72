#ifndef FAIRSIM_CLI_HH
#define FAIRSIM_CLI_HH

#include <iosfwd>
#include <string>
#include <vector>

#include "fairsim/io.hh"

namespace fairsim {

// Option structs mirror the command-line surface so checks can be driven
// programmatically (the binary itself is a thin argv wrapper).

struct CheckNdOptions {
    std::string lhs, rhs;
    std::string relation;   // optional .rel path
    std::string method = "fixpoint"; // fixpoint | game | both
    std::string dump_game_path;      // optional debug dump
};

struct CheckProbOptions {
    std::string lhs, rhs, matrix;
    bool search = false;
    std::uint32_t iteration_cap = 256;
};

struct LangProbOptions {
    std::string automaton;
    std::string word;
};

struct OracleOptions {
    std::string subcommand; // lasso | prefix | cylinder
    std::string lhs, rhs;
    std::string automaton; // lasso membership mode
    std::string stem, loop;
    std::uint32_t stem_bound = 4, loop_bound = 4;
    std::uint32_t depth = 3;
    std::uint32_t maxlen = 6;
};

struct SuiteOptions {
    std::uint64_t seed = 1;
    std::uint32_t count = 100;
    std::uint32_t max_states = 4;
};

CheckReport run_check(const CheckNdOptions& opt);
CheckReport run_check(const CheckProbOptions& opt);
CheckReport run_check(const LangProbOptions& opt);
CheckReport run_check(const OracleOptions& opt);
CheckReport run_check(const SuiteOptions& opt);

// Full argv-level entry point: parses, dispatches, prints the report.
// Exit codes: 0 holds, 1 fails, 2 inconclusive, 3 usage or I/O error.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace fairsim

#endif

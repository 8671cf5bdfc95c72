#include "fairsim/cli.hh"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fairsim/oracle.hh"
#include "fairsim/random_suite.hh"
#include "fairsim/simgame.hh"

namespace fairsim {

namespace {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

} // namespace

CheckReport run_check(const CheckNdOptions& opt) {
    Timer timer;
    CheckReport report;
    report.config = "check-nd --lhs " + opt.lhs + " --rhs " + opt.rhs +
                    (opt.relation.empty() ? "" : " --relation " + opt.relation) + " --method " +
                    opt.method;
    Nbta x = parse_nbta_file(opt.lhs);
    Nbta y = parse_nbta_file(opt.rhs);
    if (opt.method != "fixpoint" && opt.method != "game" && opt.method != "both")
        throw ValidationError("unknown method '" + opt.method + "'");

    // existence verdicts per method; with --relation the final verdict is
    // membership of the given candidate, the game stays a cross-check
    std::optional<bool> fixpoint_exists;
    std::optional<Relation> largest;
    if (opt.method == "fixpoint" || opt.method == "both" || !opt.relation.empty()) {
        largest = largest_fair_simulation(x, y);
        fixpoint_exists = largest.has_value();
    }

    std::optional<bool> game_exists;
    if (opt.method == "game" || opt.method == "both") {
        SimulationGame game = build_simulation_game(x, y);
        auto solved = solve_parity(game.game);
        game_exists = solved.even_wins[game.start];
        if (!opt.dump_game_path.empty()) {
            std::ofstream dump(opt.dump_game_path);
            dump << dump_game(game.game, &solved.even_wins);
        }
    }

    if (fixpoint_exists && game_exists && *fixpoint_exists != *game_exists)
        throw Error("internal error: fixpoint and game verdicts disagree");

    bool holds;
    if (!opt.relation.empty()) {
        Relation r = parse_relation_file(opt.relation, x, y);
        NdCheckResult res = check_fair_simulation(x, y, r);
        holds = res.holds;
        if (res.holds) {
            report.witness = print_relation(r, x, y);
        } else {
            report.condition = res.violated;
            std::ostringstream w;
            if (res.witness_x) w << "uncovered initial state " << x.state_name(*res.witness_x);
            if (res.witness_pair)
                w << "pair (" << x.state_name(res.witness_pair->first) << ","
                  << y.state_name(res.witness_pair->second) << ") not below the solution";
            report.witness = w.str();
        }
    } else {
        holds = fixpoint_exists ? *fixpoint_exists : *game_exists;
        if (holds) {
            if (!largest) largest = largest_fair_simulation(x, y);
            report.witness = print_relation(*largest, x, y);
        } else {
            report.condition = fixpoint_exists
                                   ? "no fair simulation (solution misses an initial state)"
                                   : "Even loses the simulation game from *";
        }
    }

    report.verdict = holds ? CheckReport::Verdict::Holds : CheckReport::Verdict::Fails;
    report.elapsed_ms = timer.ms();
    return report;
}

CheckReport run_check(const CheckProbOptions& opt) {
    Timer timer;
    CheckReport report;
    report.config = "check-prob --lhs " + opt.lhs + " --rhs " + opt.rhs + " --matrix " +
                    opt.matrix + (opt.search ? " --search" : "") + " --iteration-cap " +
                    std::to_string(opt.iteration_cap);
    Pbwa x = parse_pbwa_file(opt.lhs);
    Pbwa y = parse_pbwa_file(opt.rhs);
    MatFile mat = parse_mat_file(opt.matrix, x, y);

    ProbCheckResult fwd = verify_forward_sim(x, y, mat.witness);
    if (!fwd.holds) {
        report.verdict = CheckReport::Verdict::Fails;
        report.condition = fwd.violated;
        report.witness = fwd.detail;
        report.elapsed_ms = timer.ms();
        return report;
    }

    std::optional<ApproxSequences> seqs = mat.sequences;
    if (opt.search) {
        seqs = search_sequences(x, y, mat.witness, opt.iteration_cap);
        if (!seqs) {
            report.verdict = CheckReport::Verdict::Inconclusive;
            report.condition = "sequence search exhausted (not a refutation)";
            report.elapsed_ms = timer.ms();
            return report;
        }
    } else if (!seqs) {
        // Def-4.14 style witnesses need approximation sequences; without
        // --search only the trivial constant presentation is attempted
        SimPartition p = SimPartition::of(x, y);
        ApproxSequences trivial;
        trivial.a11.push_back(mat.witness.block(p, 1, 1));
        trivial.a12.push_back(mat.witness.block(p, 1, 2));
        seqs = trivial;
    }

    ProbCheckResult res = verify_matrix_fair_sim(x, y, mat.witness, *seqs);
    report.verdict = res.holds ? CheckReport::Verdict::Holds : CheckReport::Verdict::Fails;
    report.condition = res.violated;
    if (res.holds) {
        MatFile out{mat.witness, seqs};
        report.witness = print_mat(out, x, y);
    } else {
        report.witness = res.detail;
    }
    report.elapsed_ms = timer.ms();
    return report;
}

CheckReport run_check(const LangProbOptions& opt) {
    Timer timer;
    CheckReport report;
    report.config = "lang-prob --automaton " + opt.automaton + " --word '" + opt.word + "'";
    Pbwa aut = parse_pbwa_file(opt.automaton);
    Word w = parse_word(aut, opt.word);
    Rational p = cylinder_prob(aut, w);
    report.verdict = CheckReport::Verdict::Holds;
    report.witness = p.str();
    report.elapsed_ms = timer.ms();
    return report;
}

CheckReport run_check(const OracleOptions& opt) {
    Timer timer;
    CheckReport report;
    report.config = "oracle " + opt.subcommand;

    if (opt.subcommand == "lasso") {
        if (!opt.automaton.empty()) {
            Nbta aut = parse_nbta_file(opt.automaton);
            LassoWord w;
            auto tosyms = [&](const std::string& text) {
                std::vector<SymbolId> out;
                for (char c : text) {
                    auto s = aut.alphabet().find(std::string(1, c));
                    if (!s) throw ValidationError("unknown symbol '" + std::string(1, c) + "'");
                    out.push_back(*s);
                }
                return out;
            };
            w.stem = tosyms(opt.stem);
            w.loop = tosyms(opt.loop);
            bool member = nbw_lasso_member(aut, w);
            report.verdict = member ? CheckReport::Verdict::Holds : CheckReport::Verdict::Fails;
            report.witness = format_lasso(aut, w) + (member ? " is accepted" : " is rejected");
        } else {
            Nbta x = parse_nbta_file(opt.lhs);
            Nbta y = parse_nbta_file(opt.rhs);
            auto ce = nbw_inclusion_bounded(x, y, opt.stem_bound, opt.loop_bound);
            report.verdict = ce ? CheckReport::Verdict::Fails : CheckReport::Verdict::Holds;
            if (ce) {
                report.condition = "lasso counterexample";
                report.witness = format_lasso(x, *ce);
            }
        }
    } else if (opt.subcommand == "prefix") {
        Nbta x = parse_nbta_file(opt.lhs);
        Nbta y = parse_nbta_file(opt.rhs);
        auto ce = tree_prefix_inclusion(x, y, opt.depth);
        report.verdict = ce ? CheckReport::Verdict::Fails : CheckReport::Verdict::Holds;
        if (ce) {
            report.condition = "prefix counterexample (inclusion refuted)";
            report.witness = format_prefix_tree(x, *ce);
        } else {
            report.condition = "no counterexample up to depth " + std::to_string(opt.depth) +
                               " (necessary condition only)";
        }
    } else if (opt.subcommand == "cylinder") {
        Pbwa x = parse_pbwa_file(opt.lhs);
        Pbwa y = parse_pbwa_file(opt.rhs);
        auto ce = cylinder_inclusion(x, y, opt.maxlen);
        report.verdict = ce ? CheckReport::Verdict::Fails : CheckReport::Verdict::Holds;
        if (ce) {
            report.condition = "cylinder counterexample";
            report.witness = format_word(x, *ce) + ": L(lhs) = " + cylinder_prob(x, *ce).str() +
                             " > L(rhs) = " + cylinder_prob(y, *ce).str();
        }
    } else {
        throw ValidationError("unknown oracle subcommand '" + opt.subcommand + "'");
    }
    report.elapsed_ms = timer.ms();
    return report;
}

CheckReport run_check(const SuiteOptions& opt) {
    Timer timer;
    CheckReport report;
    report.config = "suite --seed " + std::to_string(opt.seed) + " --count " +
                    std::to_string(opt.count) + " --max-states " + std::to_string(opt.max_states);
    SuiteLimits limits;
    limits.max_states = opt.max_states;
    NdSuiteOutcome nd = run_nd_suite(opt.seed, opt.count, limits);
    ProbSuiteOutcome prob = run_prob_suite(opt.seed, opt.count, limits);

    std::ostringstream s;
    s << "nd-instances: " << nd.instances << '\n'
      << "nd-agreements: " << nd.agreements << '\n'
      << "nd-simulations-found: " << nd.sims_found << '\n'
      << "nd-prefix-checked: " << nd.prefix_checked << '\n'
      << "nd-lasso-checked: " << nd.lasso_checked << '\n'
      << "prob-instances: " << prob.instances << '\n'
      << "prob-forward-ok: " << prob.forward_ok << '\n'
      << "prob-accepted: " << prob.accepted << '\n';
    std::size_t violations = nd.violations.size() + prob.violations.size();
    s << "violations: " << violations << '\n';
    for (const auto& v : nd.violations) s << "violation: " << v << '\n';
    for (const auto& v : prob.violations) s << "violation: " << v << '\n';
    report.witness = s.str();
    report.verdict = violations == 0 ? CheckReport::Verdict::Holds : CheckReport::Verdict::Fails;
    if (violations) report.condition = "property violations";
    report.elapsed_ms = timer.ms();
    return report;
}

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"fair-simulation toolkit for nondeterministic Buechi tree automata and "
                 "probabilistic Buechi word automata"};
    app.require_subcommand(1);

    CheckNdOptions nd;
    auto* cmd_nd = app.add_subcommand("check-nd", "decide/check fair simulation between NBTAs");
    cmd_nd->add_option("--lhs", nd.lhs, "challenger .nbta")->required();
    cmd_nd->add_option("--rhs", nd.rhs, "simulator .nbta")->required();
    cmd_nd->add_option("--relation", nd.relation, "candidate .rel to check");
    cmd_nd->add_option("--method", nd.method, "fixpoint | game | both")
        ->check(CLI::IsMember({"fixpoint", "game", "both"}));
    cmd_nd->add_option("--dump-game", nd.dump_game_path, "write the parity game to a file");

    CheckProbOptions prob;
    auto* cmd_prob =
        app.add_subcommand("check-prob", "verify a matrix fair simulation between PBWAs");
    cmd_prob->add_option("--lhs", prob.lhs, "challenger .pbwa")->required();
    cmd_prob->add_option("--rhs", prob.rhs, "simulator .pbwa")->required();
    cmd_prob->add_option("--matrix", prob.matrix, "witness .mat")->required();
    cmd_prob->add_flag("--search", prob.search, "search approximation sequences");
    cmd_prob->add_option("--iteration-cap", prob.iteration_cap, "search iteration bound");

    LangProbOptions lang;
    auto* cmd_lang = app.add_subcommand("lang-prob", "cylinder probability of a finite word");
    cmd_lang->add_option("--automaton", lang.automaton, ".pbwa file")->required();
    cmd_lang->add_option("--word", lang.word, "finite word")->required();

    OracleOptions oracle;
    auto* cmd_oracle = app.add_subcommand("oracle", "desk-scale language oracles");
    cmd_oracle->require_subcommand(1);
    auto* cmd_lasso = cmd_oracle->add_subcommand("lasso", "lasso membership / bounded inclusion");
    cmd_lasso->add_option("--automaton", oracle.automaton, "membership mode: unary .nbta");
    cmd_lasso->add_option("--stem", oracle.stem, "membership mode: stem word");
    cmd_lasso->add_option("--loop", oracle.loop, "membership mode: loop word");
    cmd_lasso->add_option("--lhs", oracle.lhs, "inclusion mode: challenger .nbta");
    cmd_lasso->add_option("--rhs", oracle.rhs, "inclusion mode: simulator .nbta");
    cmd_lasso->add_option("--stem-bound", oracle.stem_bound, "inclusion mode stem bound");
    cmd_lasso->add_option("--loop-bound", oracle.loop_bound, "inclusion mode loop bound");
    auto* cmd_prefix = cmd_oracle->add_subcommand("prefix", "bounded tree-prefix inclusion");
    cmd_prefix->add_option("--lhs", oracle.lhs, "challenger .nbta")->required();
    cmd_prefix->add_option("--rhs", oracle.rhs, "simulator .nbta")->required();
    cmd_prefix->add_option("--depth", oracle.depth, "prefix depth");
    auto* cmd_cyl = cmd_oracle->add_subcommand("cylinder", "bounded cylinder inclusion");
    cmd_cyl->add_option("--lhs", oracle.lhs, "challenger .pbwa")->required();
    cmd_cyl->add_option("--rhs", oracle.rhs, "simulator .pbwa")->required();
    cmd_cyl->add_option("--maxlen", oracle.maxlen, "max word length");

    SuiteOptions suite;
    auto* cmd_suite = app.add_subcommand("suite", "seeded cross-validation property runs");
    cmd_suite->add_option("--seed", suite.seed, "generator seed");
    cmd_suite->add_option("--count", suite.count, "instances per family");
    cmd_suite->add_option("--max-states", suite.max_states, "state bound");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << '\n';
        return 3;
    }

    try {
        CheckReport report;
        if (cmd_nd->parsed()) report = run_check(nd);
        else if (cmd_prob->parsed()) report = run_check(prob);
        else if (cmd_lang->parsed()) report = run_check(lang);
        else if (cmd_oracle->parsed()) {
            if (cmd_lasso->parsed()) oracle.subcommand = "lasso";
            else if (cmd_prefix->parsed()) oracle.subcommand = "prefix";
            else oracle.subcommand = "cylinder";
            report = run_check(oracle);
        } else {
            report = run_check(suite);
        }
        out << report.to_text();
        return report.exit_code();
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return 3;
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << '\n';
        return 3;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    }
}

} // namespace fairsim

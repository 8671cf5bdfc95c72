#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "fairsim/cli.hh"
#include "fairsim/io.hh"
#include "fairsim/random_suite.hh"
#include "support.hh"

using namespace fairsim;
using tests::fixture_path;

TEST_CASE("the tree fixture parses to the expected automaton") {
    Nbta x = parse_nbta_file(fixture_path("ex312x.nbta"));
    CHECK(x.num_states() == 2);
    CHECK(x.alphabet().size() == 2);
    CHECK(x.initial_states() == std::vector<StateId>{0});
    CHECK(!x.accepting(0));
    CHECK(x.accepting(1));
    CHECK(x.delta(0).size() == 2);
}

TEST_CASE("the probabilistic fixture parses with unit initial mass") {
    Pbwa aut = parse_pbwa_file(fixture_path("ex43.pbwa"));
    CHECK(aut.num_states() == 5);
    CHECK(aut.initial()[0] == Rational::one());
    for (std::size_t i = 1; i < 5; ++i) CHECK(aut.initial()[i] == Rational(0));
    CHECK(aut.accepting(2));
    CHECK(aut.accepting(4));
    CHECK(aut.matrix(1).at(0, 3) == Rational(1, 6));
}

TEST_CASE("arity violations are semantic errors") {
    std::istringstream in("nbta\nalphabet a:2\nstates x\ninitial x\naccepting\n"
                          "trans x a x x x\n");
    CHECK_THROWS_AS(parse_nbta(in), ParseError);
}

TEST_CASE("syntax errors carry line and column") {
    std::istringstream in("nbta\nalphabet a:2\nstates x\ntrans x q x x\n");
    try {
        parse_nbta(in);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 4);
        CHECK(e.column > 0);
    }
}

TEST_CASE("row mass above one is rejected at validation") {
    std::istringstream in("pbwa\nalphabet a\nstates x\ninitial x 1\naccepting x\n"
                          "trans x a x 2/3\ntrans x a x 1/2\n");
    CHECK_THROWS_AS(parse_pbwa(in), ValidationError);
}

TEST_CASE("automata survive a print/parse round trip") {
    Rng rng(23);
    SuiteLimits limits;
    for (int round = 0; round < 20; ++round) {
        Nbta x = random_nbta(rng, limits);
        std::istringstream in(print_nbta(x));
        Nbta back = parse_nbta(in);
        CHECK(back.alphabet() == x.alphabet());
        CHECK(back.num_states() == x.num_states());
        for (StateId s = 0; s < x.num_states(); ++s) {
            CHECK(back.delta(s) == x.delta(s));
            CHECK(back.initial(s) == x.initial(s));
            CHECK(back.accepting(s) == x.accepting(s));
        }

        Pbwa p = random_pbwa(rng, limits);
        std::istringstream pin(print_pbwa(p));
        Pbwa pback = parse_pbwa(pin);
        CHECK(pback.num_states() == p.num_states());
        for (std::uint32_t a = 0; a < p.num_letters(); ++a)
            CHECK(pback.matrix(a) == p.matrix(a));
        for (std::size_t s = 0; s < p.num_states(); ++s) {
            CHECK(pback.initial()[s] == p.initial()[s]);
            CHECK(pback.accepting(s) == p.accepting(s));
        }
    }
}

TEST_CASE("witness files round trip including sequences") {
    Pbwa x = parse_pbwa_file(fixture_path("ex416x.pbwa"));
    Pbwa y = parse_pbwa_file(fixture_path("ex416y.pbwa"));
    MatFile mat = parse_mat_file(fixture_path("ex416a.mat"), x, y);
    REQUIRE(mat.sequences.has_value());
    CHECK(mat.sequences->a11.size() == 4);
    CHECK(mat.sequences->omega());
    std::istringstream in(print_mat(mat, x, y));
    MatFile back = parse_mat(in, x, y);
    CHECK(back.witness.a == mat.witness.a);
    REQUIRE(back.sequences.has_value());
    CHECK(back.sequences->a11.size() == mat.sequences->a11.size());
    for (std::size_t i = 0; i < mat.sequences->a11.size(); ++i) {
        CHECK(back.sequences->a11[i] == mat.sequences->a11[i]);
        CHECK(back.sequences->a12[i] == mat.sequences->a12[i]);
    }
    CHECK(back.sequences->omega_limit->first == mat.sequences->omega_limit->first);
}

TEST_CASE("check-nd reports hold with the full-relation witness") {
    CheckNdOptions opt;
    opt.lhs = fixture_path("ex312x.nbta");
    opt.rhs = fixture_path("ex312y.nbta");
    opt.method = "both";
    CheckReport report = run_check(opt);
    CHECK(report.verdict == CheckReport::Verdict::Holds);
    CHECK(report.exit_code() == 0);
    // witness is the full relation: 2 * 3 pairs
    std::size_t pairs = 0;
    std::istringstream w(report.witness);
    std::string line;
    while (std::getline(w, line))
        if (line.rfind("pair ", 0) == 0) ++pairs;
    CHECK(pairs == 6);
}

TEST_CASE("lang-prob reproduces the a^n probabilities") {
    LangProbOptions opt;
    opt.automaton = fixture_path("ex43.pbwa");
    opt.word = "aa";
    CheckReport report = run_check(opt);
    CHECK(report.witness == "1/12");
}

TEST_CASE("cli drives the oracle subcommands with exit codes") {
    std::ostringstream out, err;
    int code = cli_main({"oracle", "cylinder", "--lhs", fixture_path("ex416x.pbwa"), "--rhs",
                         fixture_path("ex416y.pbwa"), "--maxlen", "5"},
                        out, err);
    CHECK(code == 0);
    CHECK(out.str().find("verdict: holds") != std::string::npos);

    std::ostringstream out2, err2;
    int code2 = cli_main({"lang-prob", "--automaton", fixture_path("ex43.pbwa"), "--word", "b"},
                         out2, err2);
    CHECK(code2 == 0);
    CHECK(out2.str().find("1/6") != std::string::npos);

    std::ostringstream out3, err3;
    int code3 = cli_main({"check-nd", "--lhs", "missing.nbta", "--rhs", "missing.nbta"}, out3,
                         err3);
    CHECK(code3 == 3);
}

TEST_CASE("reports are deterministic for fixed inputs") {
    CheckNdOptions opt;
    opt.lhs = fixture_path("ex312x.nbta");
    opt.rhs = fixture_path("ex312y.nbta");
    CheckReport a = run_check(opt);
    CheckReport b = run_check(opt);
    CHECK(a.witness == b.witness);
    CHECK(a.condition == b.condition);
}

TEST_CASE("relation checks coexist with the game cross-check") {
    // a candidate below the solution passes; one outside fails even
    // though a fair simulation exists
    std::string rel_ok = std::string(FAIRSIM_FIXTURE_DIR) + "/tmp_ok.rel";
    std::string rel_bad = std::string(FAIRSIM_FIXTURE_DIR) + "/tmp_bad.rel";
    {
        std::ofstream ok(rel_ok);
        ok << "pair x1 y0\npair x2 y1\n";
        std::ofstream bad(rel_bad);
        bad << "pair x2 y1\n"; // misses the initial challenger state
    }
    CheckNdOptions opt;
    opt.lhs = fixture_path("ex312x.nbta");
    opt.rhs = fixture_path("ex312y.nbta");
    opt.method = "both";
    opt.relation = rel_ok;
    CHECK(run_check(opt).verdict == CheckReport::Verdict::Holds);
    opt.relation = rel_bad;
    CheckReport bad = run_check(opt);
    CHECK(bad.verdict == CheckReport::Verdict::Fails);
    CHECK(bad.condition == "initial-state condition");
    std::remove(rel_ok.c_str());
    std::remove(rel_bad.c_str());
}

TEST_CASE("an empty suite run reports an empty summary") {
    SuiteOptions opt;
    opt.count = 0;
    CheckReport report = run_check(opt);
    CHECK(report.verdict == CheckReport::Verdict::Holds);
    CHECK(report.witness.find("nd-instances: 0") != std::string::npos);
    CHECK(report.witness.find("violations: 0") != std::string::npos);
}

TEST_CASE("the game dump lists positions with winners") {
    std::string dump_path = std::string(FAIRSIM_FIXTURE_DIR) + "/tmp_dump.txt";
    CheckNdOptions opt;
    opt.lhs = fixture_path("ex312x.nbta");
    opt.rhs = fixture_path("ex312y.nbta");
    opt.method = "game";
    opt.dump_game_path = dump_path;
    run_check(opt);
    std::ifstream in(dump_path);
    REQUIRE(in.good());
    std::string first;
    std::getline(in, first);
    CHECK(first.find("odd") != std::string::npos); // the start position is Odd's
    CHECK(first.find("\"*\"") != std::string::npos);
    std::remove(dump_path.c_str());
}

TEST_CASE("the check-prob command verifies and searches") {
    CheckProbOptions opt;
    opt.lhs = fixture_path("ex416x.pbwa");
    opt.rhs = fixture_path("ex416y.pbwa");
    opt.matrix = fixture_path("ex416a.mat");
    CheckReport verify = run_check(opt);
    CHECK(verify.verdict == CheckReport::Verdict::Holds);

    opt.search = true;
    CheckReport searched = run_check(opt);
    CHECK(searched.verdict == CheckReport::Verdict::Holds);
    CHECK(searched.witness.find("limit11") != std::string::npos);
}

TEST_CASE("check-prob without sequences falls back to the trivial presentation") {
    // the split-lane witness has a nonzero A12 block, so the constant
    // presentation fails the zero base and --search is required
    CheckProbOptions opt;
    opt.lhs = fixture_path("ex616x.pbwa");
    opt.rhs = fixture_path("ex616y.pbwa");
    opt.matrix = fixture_path("ex616f.mat");
    CheckReport plain = run_check(opt);
    CHECK(plain.verdict == CheckReport::Verdict::Fails);
    CHECK(plain.condition == "3d-base");

    opt.search = true;
    CHECK(run_check(opt).verdict == CheckReport::Verdict::Holds);
}

TEST_CASE("oracle inclusion subcommands report counterexamples with exit 1") {
    // all-words automaton vs infinitely-many-b automaton as files
    std::string all_path = std::string(FAIRSIM_FIXTURE_DIR) + "/tmp_all.nbta";
    std::string infb_path = std::string(FAIRSIM_FIXTURE_DIR) + "/tmp_infb.nbta";
    {
        std::ofstream all(all_path);
        all << "nbta\nalphabet a:1 b:1\nstates q\ninitial q\naccepting q\n"
               "trans q a q\ntrans q b q\n";
        std::ofstream infb(infb_path);
        infb << "nbta\nalphabet a:1 b:1\nstates w v\ninitial w\naccepting v\n"
                "trans w a w\ntrans w b v\ntrans v a w\ntrans v b v\n";
    }
    std::ostringstream out, err;
    int code = cli_main({"oracle", "lasso", "--lhs", all_path, "--rhs", infb_path,
                         "--stem-bound", "2", "--loop-bound", "2"},
                        out, err);
    CHECK(code == 1);
    CHECK(out.str().find("(a)^w") != std::string::npos);

    std::ostringstream out2, err2;
    int code2 = cli_main({"oracle", "prefix", "--lhs", all_path, "--rhs", infb_path, "--depth",
                          "2"},
                         out2, err2);
    CHECK(code2 == 0); // every finite prefix of a^w is realizable in both
    std::remove(all_path.c_str());
    std::remove(infb_path.c_str());
}

TEST_CASE("suite runs are reproducible for a fixed seed") {
    SuiteOptions opt;
    opt.count = 30;
    opt.seed = 77;
    CheckReport a = run_check(opt);
    CheckReport b = run_check(opt);
    CHECK(a.witness == b.witness);
}

// Acceptance suite: one self-contained check per criterion, one pass/fail
// line each, nonzero exit when anything fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "fairsim/cli.hh"
#include "fairsim/eqsys.hh"
#include "fairsim/oracle.hh"
#include "fairsim/random_suite.hh"
#include "fairsim/simgame.hh"
#include "support.hh"

using namespace fairsim;
using tests::fixture_path;

namespace {

struct Harness {
    int failures = 0;

    void run(const std::string& name, double budget_ms,
             const std::function<bool(std::string&)>& body) {
        auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = body(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                              start)
                        .count();
        if (ok && budget_ms > 0 && ms > budget_ms) {
            ok = false;
            detail += " (budget " + std::to_string(budget_ms) + " ms exceeded)";
        }
        std::cout << (ok ? "PASS" : "FAIL") << ' ' << name << " [" << static_cast<long>(ms)
                  << " ms]";
        if (!detail.empty()) std::cout << " - " << detail;
        std::cout << '\n';
        if (!ok) ++failures;
    }
};

bool count_pairs(const std::string& witness, std::size_t expected) {
    std::istringstream in(witness);
    std::string line;
    std::size_t pairs = 0;
    while (std::getline(in, line))
        if (line.rfind("pair ", 0) == 0) ++pairs;
    return pairs == expected;
}

} // namespace

int main() {
    Harness h;

    h.run("criterion-1 tree-pair reproduction (fixpoint and game agree, full witness)", 1000,
          [&](std::string& detail) {
              for (const char* method : {"fixpoint", "game"}) {
                  CheckNdOptions opt;
                  opt.lhs = fixture_path("ex312x.nbta");
                  opt.rhs = fixture_path("ex312y.nbta");
                  opt.method = method;
                  CheckReport report = run_check(opt);
                  if (report.verdict != CheckReport::Verdict::Holds) {
                      detail = std::string(method) + " did not report holds";
                      return false;
                  }
                  if (!count_pairs(report.witness, 6)) {
                      detail = std::string(method) + " witness is not the full relation";
                      return false;
                  }
              }
              return true;
          });

    h.run("criterion-2 order sensitivity of equation systems", 0, [&](std::string& detail) {
        using namespace fairsim::eqsys;
        FiniteLattice<Bitset> lat;
        lat.bottom = Bitset(1);
        lat.top = Bitset::full(1);
        lat.leq = [](const Bitset& a, const Bitset& b) { return a.subset_of(b); };
        lat.join = [](const Bitset& a, const Bitset& b) { return a | b; };
        lat.meet = [](const Bitset& a, const Bitset& b) { return a & b; };

        EquationalSystem<Bitset> mu_nu;
        Equation<Bitset> u, v;
        u.lattice = v.lattice = lat;
        u.sign = Sign::Least;
        u.rhs = [](std::span<const Bitset> vals) { return vals[1]; };
        v.sign = Sign::Greatest;
        v.rhs = [](std::span<const Bitset> vals) { return vals[0]; };
        mu_nu.equations = {u, v};
        auto sol1 = solve(mu_nu);
        if (!(sol1[0] == lat.top && sol1[1] == lat.top)) {
            detail = "(u =mu v, v =nu u) did not solve to top";
            return false;
        }

        EquationalSystem<Bitset> nu_mu;
        Equation<Bitset> v2, u2;
        v2.lattice = u2.lattice = lat;
        v2.sign = Sign::Greatest;
        v2.rhs = [](std::span<const Bitset> vals) { return vals[1]; };
        u2.sign = Sign::Least;
        u2.rhs = [](std::span<const Bitset> vals) { return vals[0]; };
        nu_mu.equations = {v2, u2};
        auto sol2 = solve(nu_mu);
        if (!(sol2[0] == lat.bottom && sol2[1] == lat.bottom)) {
            detail = "(v =nu u, u =mu v) did not solve to bottom";
            return false;
        }
        return true;
    });

    SuiteLimits limits; // <=4 states, <=2 symbols, arity <=2
    NdSuiteOutcome nd;

    h.run("criterion-3 fixpoint/game cross-validation on 100 seeded pairs", 30000,
          [&](std::string& detail) {
              nd = run_nd_suite(/*seed=*/1, /*count=*/100, limits);
              if (nd.agreements != 100) {
                  detail = std::to_string(nd.agreements) + "/100 agreements";
                  if (!nd.violations.empty()) detail += "; first: " + nd.violations.front();
                  return false;
              }
              return true;
          });

    h.run("criterion-4 progress-measure solver vs strategy enumeration (200 games)", 30000,
          [&](std::string& detail) {
              Rng rng(4);
              for (int round = 0; round < 200; ++round) {
                  ParityGame g = random_parity_game(rng, 8, 3);
                  auto spm = solve_parity(g);
                  auto brute = brute_force_parity(g);
                  for (std::size_t v = 0; v < g.size(); ++v)
                      if (spm.even_wins[v] != brute[v]) {
                          detail = "disagreement in game " + std::to_string(round) +
                                   " at position " + std::to_string(v);
                          return false;
                      }
                  if (!validate_progress_measure(g, spm.measure)) {
                      detail = "solver returned an invalid measure in game " +
                               std::to_string(round);
                      return false;
                  }
              }
              return true;
          });

    h.run("criterion-5 bounded soundness oracles silent when simulations exist", 60000,
          [&](std::string& detail) {
              // the nd suite already ran the depth-4 prefix and bound-4
              // lasso oracles on every instance with a fair simulation
              if (nd.sims_found == 0) {
                  detail = "no simulations found; suite not exercised";
                  return false;
              }
              if (!nd.violations.empty()) {
                  detail = "violations: " + nd.violations.front();
                  return false;
              }
              detail = std::to_string(nd.sims_found) + " simulations, " +
                       std::to_string(nd.prefix_checked) + " prefix runs, " +
                       std::to_string(nd.lasso_checked) + " lasso runs";
              return true;
          });

    h.run("criterion-6 cylinder probabilities (1/2)^n/3 and exact additivity", 1000,
          [&](std::string& detail) {
              Pbwa aut = parse_pbwa_file(fixture_path("ex43.pbwa"));
              Word w;
              for (int n = 0; n <= 8; ++n) {
                  if (cylinder_prob(aut, w) != Rational::pow2(-n) * Rational(1, 3)) {
                      detail = "a^" + std::to_string(n) + " has the wrong probability";
                      return false;
                  }
                  w.push_back(0);
              }
              std::vector<Word> frontier{{}};
              for (int len = 0; len <= 6; ++len) {
                  std::vector<Word> next;
                  for (const Word& word : frontier) {
                      Rational total;
                      for (LetterId a = 0; a < aut.num_letters(); ++a) {
                          Word wa = word;
                          wa.push_back(a);
                          total += cylinder_prob(aut, wa);
                          next.push_back(std::move(wa));
                      }
                      if (cylinder_prob(aut, word) != total) {
                          detail = "additivity violated at '" + format_word(aut, word) + "'";
                          return false;
                      }
                  }
                  frontier = std::move(next);
              }
              return true;
          });

    h.run("criterion-7 all-half witness verifies; search certifies limit (1/2, 1/2)", 1000,
          [&](std::string& detail) {
              Pbwa x = parse_pbwa_file(fixture_path("ex416x.pbwa"));
              Pbwa y = parse_pbwa_file(fixture_path("ex416y.pbwa"));
              MatFile mat = parse_mat_file(fixture_path("ex416a.mat"), x, y);
              if (!mat.sequences) {
                  detail = "fixture lost its sequences";
                  return false;
              }
              auto res = verify_matrix_fair_sim(x, y, mat.witness, *mat.sequences);
              if (!res.holds) {
                  detail = "bundled witness rejected: " + res.violated + " " + res.detail;
                  return false;
              }
              auto searched = search_sequences(x, y, mat.witness);
              if (!searched) {
                  detail = "search did not certify the witness";
                  return false;
              }
              if (!searched->omega()) {
                  detail = "search found no omega limit";
                  return false;
              }
              if (searched->omega_limit->first.at(0, 0) != Rational(1, 2) ||
                  searched->omega_limit->second.at(0, 0) != Rational(1, 2)) {
                  detail = "limit pair is not (1/2, 1/2)";
                  return false;
              }
              if (!verify_matrix_fair_sim(x, y, mat.witness, *searched).holds) {
                  detail = "searched sequences fail verification";
                  return false;
              }
              return true;
          });

    h.run("criterion-8 accepted witnesses never contradict the cylinder oracle", 60000,
          [&](std::string& detail) {
              ProbSuiteOutcome prob = run_prob_suite(/*seed=*/1, /*count=*/200, limits);
              if (!prob.violations.empty()) {
                  detail = prob.violations.front();
                  return false;
              }
              if (prob.instances < 100 || prob.accepted < 100) {
                  detail = "only " + std::to_string(prob.accepted) +
                           " accepted witnesses; property underexercised";
                  return false;
              }
              detail = std::to_string(prob.instances) + " instances, " +
                       std::to_string(prob.accepted) + " accepted";
              return true;
          });

    h.run("criterion-9 accepting closure preserves cylinder and acceptance values", 60000,
          [&](std::string& detail) {
              std::vector<Pbwa> subjects;
              subjects.push_back(parse_pbwa_file(fixture_path("ex43.pbwa")));
              subjects.push_back(parse_pbwa_file(fixture_path("ex416x.pbwa")));
              subjects.push_back(parse_pbwa_file(fixture_path("ex416y.pbwa")));
              subjects.push_back(parse_pbwa_file(fixture_path("ex616x.pbwa")));
              subjects.push_back(parse_pbwa_file(fixture_path("ex616y.pbwa")));
              Rng rng(9);
              for (int i = 0; i < 50; ++i) subjects.push_back(random_pbwa(rng, limits));

              for (std::size_t s = 0; s < subjects.size(); ++s) {
                  const Pbwa& aut = subjects[s];
                  Pbwa closed = accepting_closure(aut);
                  // cylinder probabilities preserved exactly to length 6
                  std::vector<Word> frontier{{}};
                  for (int len = 0; len <= 6; ++len) {
                      std::vector<Word> next;
                      for (const Word& w : frontier) {
                          if (cylinder_prob(aut, w) != cylinder_prob(closed, w)) {
                              detail = "subject " + std::to_string(s) + " changed at '" +
                                       format_word(aut, w) + "'";
                              return false;
                          }
                          if (len < 6)
                              for (LetterId a = 0; a < aut.num_letters(); ++a) {
                                  Word wa = w;
                                  wa.push_back(a);
                                  next.push_back(std::move(wa));
                              }
                      }
                      frontier = std::move(next);
                  }
                  // acceptance probabilities agree, in particular on the
                  // union of BSCCs meeting the original accepting set
                  RVec before = acceptance_vector(aut);
                  RVec after = acceptance_vector(closed);
                  for (std::size_t q = 0; q < before.size(); ++q)
                      if (before[q] != after[q]) {
                          detail = "acceptance vector changed on subject " + std::to_string(s);
                          return false;
                      }
              }
              return true;
          });

    h.run("criterion-10 split-lane witness accepted and inclusion confirmed", 10000,
          [&](std::string& detail) {
              Pbwa x = parse_pbwa_file(fixture_path("ex616x.pbwa"));
              Pbwa y = parse_pbwa_file(fixture_path("ex616y.pbwa"));
              MatFile mat = parse_mat_file(fixture_path("ex616f.mat"), x, y);
              auto seqs = search_sequences(x, y, mat.witness);
              if (!seqs) {
                  detail = "search failed";
                  return false;
              }
              auto res = verify_matrix_fair_sim(x, y, mat.witness, *seqs);
              if (!res.holds) {
                  detail = "witness rejected: " + res.violated;
                  return false;
              }
              if (auto ce = cylinder_inclusion(x, y, 6)) {
                  detail = "cylinder counterexample '" + format_word(x, *ce) + "'";
                  return false;
              }
              return true;
          });

    std::cout << (h.failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES: ")
              << (h.failures == 0 ? "" : std::to_string(h.failures)) << '\n';
    return h.failures == 0 ? 0 : 1;
}

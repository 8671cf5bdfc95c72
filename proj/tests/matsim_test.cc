#include <doctest.h>

#include "fairsim/matsim.hh"
#include "fairsim/oracle.hh"
#include "fairsim/random_suite.hh"
#include "support.hh"

using namespace fairsim;
using tests::absorbing_simulator;
using tests::all_half_witness;
using tests::alternating_challenger;
using tests::five_state_word_automaton;
using tests::prompt_simulator;
using tests::split_lane_challenger;
using tests::split_lane_witness;

namespace {

// closed-form sequences 1/2 - (1/2)^(i+1) with limit 1/2
ApproxSequences closed_form_sequences(std::size_t prefix_len) {
    ApproxSequences seqs;
    for (std::size_t i = 0; i < prefix_len; ++i) {
        RMatrix m(1, 1);
        m.at(0, 0) = Rational(1, 2) - Rational::pow2(-static_cast<int>(i) - 1);
        seqs.a11.push_back(m);
        seqs.a12.push_back(m);
    }
    RMatrix half(1, 1);
    half.at(0, 0) = Rational(1, 2);
    seqs.omega_limit = std::make_pair(half, half);
    return seqs;
}

} // namespace

TEST_CASE("the all-half witness with closed-form sequences verifies") {
    Pbwa x = alternating_challenger();
    Pbwa y = absorbing_simulator();
    auto res = verify_matrix_fair_sim(x, y, all_half_witness(), closed_form_sequences(4));
    INFO(res.violated, ": ", res.detail);
    CHECK(res.holds);
}

TEST_CASE("conditions 1-2 hold standalone whenever verify accepts") {
    Pbwa x = alternating_challenger();
    Pbwa y = absorbing_simulator();
    CHECK(verify_forward_sim(x, y, all_half_witness()).holds);
}

TEST_CASE("the zero witness fails the initial-vector inequality") {
    Pbwa x = alternating_challenger();
    Pbwa y = absorbing_simulator();
    MatrixWitness zero{RMatrix::zero(2, 2)};
    auto res = verify_forward_sim(x, y, zero);
    CHECK(!res.holds);
    CHECK(res.violated == "2-initial");
}

TEST_CASE("broken sequences are rejected with the right condition") {
    Pbwa x = alternating_challenger();
    Pbwa y = absorbing_simulator();

    auto nonzero_base = closed_form_sequences(3);
    nonzero_base.a12[0].at(0, 0) = Rational(1, 8);
    CHECK(verify_matrix_fair_sim(x, y, all_half_witness(), nonzero_base).violated == "3d-base");

    auto decreasing = closed_form_sequences(3);
    decreasing.a11[2].at(0, 0) = Rational(1, 16);
    CHECK(verify_matrix_fair_sim(x, y, all_half_witness(), decreasing).violated == "3-increasing");

    auto wrong_final = closed_form_sequences(3);
    wrong_final.omega_limit->first.at(0, 0) = Rational(1, 4);
    auto res = verify_matrix_fair_sim(x, y, all_half_witness(), wrong_final);
    CHECK(!res.holds);

    // a step that jumps ahead of what the previous index allows
    auto eager = closed_form_sequences(2);
    eager.a12[1].at(0, 0) = Rational(1, 2); // needs 1/2 <= 1/2*A11^(0) + 1/4 = 1/4
    CHECK(verify_matrix_fair_sim(x, y, all_half_witness(), eager).violated == "3e-step");
}

TEST_CASE("search finds the exact limit on the alternating pair") {
    Pbwa x = alternating_challenger();
    Pbwa y = absorbing_simulator();
    auto seqs = search_sequences(x, y, all_half_witness());
    REQUIRE(seqs.has_value());
    CHECK(verify_matrix_fair_sim(x, y, all_half_witness(), *seqs).holds);
    REQUIRE(seqs->omega());
    CHECK(seqs->omega_limit->first.at(0, 0) == Rational(1, 2));
    CHECK(seqs->omega_limit->second.at(0, 0) == Rational(1, 2));

    // the iterates of the A12 block follow the maximal recurrence
    REQUIRE(seqs->a12.size() >= 3);
    CHECK(seqs->a12[0].at(0, 0) == Rational(0));
    CHECK(seqs->a12[1].at(0, 0) == Rational(3, 8));
    CHECK(seqs->a12[2].at(0, 0) == Rational(15, 32));
    for (std::size_t i = 0; i + 1 < seqs->a12.size(); ++i)
        CHECK(seqs->a12[i].at(0, 0) <= seqs->a12[i + 1].at(0, 0));
}

TEST_CASE("search succeeds on the split-lane fixture") {
    Pbwa x = split_lane_challenger();
    Pbwa y = prompt_simulator();
    auto seqs = search_sequences(x, y, split_lane_witness());
    REQUIRE(seqs.has_value());
    CHECK(verify_matrix_fair_sim(x, y, split_lane_witness(), *seqs).holds);
}

TEST_CASE("challenger without accepting states needs no real sequences") {
    RMatrix ma(1, 1);
    ma.at(0, 0) = Rational::one();
    Pbwa x({"a"}, {"x"}, {ma}, RVec{Rational::one()}, {false});
    Pbwa y = absorbing_simulator();
    RMatrix a(2, 1);
    a.at(0, 0) = Rational::one();
    a.at(1, 0) = Rational::one();
    auto seqs = search_sequences(x, y, MatrixWitness{a});
    REQUIRE(seqs.has_value());
    CHECK(seqs->a12.front().cols() == 0);
    CHECK(verify_matrix_fair_sim(x, y, MatrixWitness{a}, *seqs).holds);
}

TEST_CASE("witnesses beyond every reachable iterate are not certified") {
    // accepting self-loop challenger against a never-accepting simulator:
    // conditions 1-2 hold for the identity-like witness but the A12 block
    // can never climb from the zero base
    RMatrix ma(1, 1);
    ma.at(0, 0) = Rational::one();
    Pbwa x({"a"}, {"x"}, {ma}, RVec{Rational::one()}, {true});
    Pbwa y({"a"}, {"y"}, {ma}, RVec{Rational::one()}, {false});
    RMatrix a(1, 1);
    a.at(0, 0) = Rational::one();
    CHECK(verify_forward_sim(x, y, MatrixWitness{a}).holds);
    CHECK(!search_sequences(x, y, MatrixWitness{a}).has_value());
}

TEST_CASE("empty presentations are rejected") {
    Pbwa x = alternating_challenger();
    Pbwa y = absorbing_simulator();
    ApproxSequences empty;
    CHECK(verify_matrix_fair_sim(x, y, all_half_witness(), empty).violated == "3-presentation");
}

TEST_CASE("search refuses witnesses violating conditions 1-2") {
    Pbwa x = alternating_challenger();
    Pbwa y = absorbing_simulator();
    CHECK_THROWS_AS(search_sequences(x, y, MatrixWitness{RMatrix::zero(2, 2)}), ValidationError);
}

TEST_CASE("accepting closure promotes states that reach the accepting set") {
    Pbwa y = absorbing_simulator();
    Pbwa closed = accepting_closure(y);
    CHECK(closed.accepting(0)); // y1 reaches y2 with positive probability
    CHECK(closed.accepting(1));

    Pbwa x = five_state_word_automaton();
    Pbwa cx = accepting_closure(x);
    for (std::uint32_t s = 0; s < 5; ++s) CHECK(cx.accepting(s));

    // closure preserves cylinder probabilities
    std::vector<Word> frontier{{}};
    for (int len = 0; len <= 6; ++len) {
        std::vector<Word> next;
        for (const Word& w : frontier) {
            CHECK(cylinder_prob(x, w) == cylinder_prob(cx, w));
            for (LetterId a = 0; a < x.num_letters(); ++a) {
                Word wa = w;
                wa.push_back(a);
                next.push_back(std::move(wa));
            }
        }
        frontier = std::move(next);
    }
}

TEST_CASE("closure is idempotent and skips unreachable accepting sets") {
    Pbwa x = five_state_word_automaton();
    Pbwa once = accepting_closure(x);
    Pbwa twice = accepting_closure(once);
    for (std::uint32_t s = 0; s < 5; ++s) CHECK(once.accepting(s) == twice.accepting(s));

    // accepting states unreachable from the non-accepting ones: unchanged
    RMatrix m(2, 2);
    m.at(0, 0) = Rational::one();
    m.at(1, 1) = Rational::one();
    Pbwa island({"a"}, {"u", "v"}, {m}, RVec{Rational(1, 2), Rational(1, 2)}, {false, true});
    Pbwa closed = accepting_closure(island);
    CHECK(!closed.accepting(0));
    CHECK(closed.accepting(1));
}

TEST_CASE("closure keeps acceptance probabilities on random automata") {
    Rng rng(17);
    SuiteLimits limits;
    for (int round = 0; round < 25; ++round) {
        Pbwa aut = random_pbwa(rng, limits);
        Pbwa closed = accepting_closure(aut);
        RVec before = acceptance_vector(aut);
        RVec after = acceptance_vector(closed);
        for (std::size_t i = 0; i < before.size(); ++i) CHECK(before[i] == after[i]);
    }
}

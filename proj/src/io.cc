#include "fairsim/io.hh"

#include <fstream>
#include <map>
#include <sstream>

namespace fairsim {

namespace {

struct Token {
    std::string text;
    std::size_t line, column;
};

// whitespace-split tokens per line, '#' to end of line ignored
std::vector<std::vector<Token>> tokenize(std::istream& in) {
    std::vector<std::vector<Token>> lines;
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::vector<Token> toks;
        std::size_t i = 0;
        while (i < raw.size()) {
            if (std::isspace(static_cast<unsigned char>(raw[i]))) { ++i; continue; }
            if (raw[i] == '#') break;
            std::size_t start = i;
            while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i])) &&
                   raw[i] != '#')
                ++i;
            toks.push_back(Token{raw.substr(start, i - start), lineno, start + 1});
        }
        if (!toks.empty()) lines.push_back(std::move(toks));
    }
    return lines;
}

[[noreturn]] void fail(const Token& at, const std::string& msg) {
    throw ParseError("line " + std::to_string(at.line) + ", column " + std::to_string(at.column) +
                         ": " + msg,
                     at.line, at.column);
}

[[noreturn]] void fail_eof(const std::string& msg) { throw ParseError(msg + " (unexpected end)", 0, 0); }

Rational parse_prob(const Token& t) {
    auto r = Rational::parse(t.text);
    if (!r) fail(t, "expected a rational 'p/q', got '" + t.text + "'");
    if (!r->in_unit_interval()) fail(t, "probability '" + t.text + "' outside [0,1]");
    return *r;
}

// index lookup with parse-error reporting
template <typename F>
std::uint32_t lookup(const F& find, const Token& t, const char* what) {
    auto id = find(t.text);
    if (!id) fail(t, std::string("unknown ") + what + " '" + t.text + "'");
    return *id;
}

} // namespace

Nbta parse_nbta(std::istream& in) {
    auto lines = tokenize(in);
    if (lines.empty()) fail_eof("empty .nbta input");
    if (lines[0][0].text != "nbta") fail(lines[0][0], "expected header 'nbta'");

    RankedAlphabet alpha;
    std::vector<std::string> states;
    std::vector<std::string> initial_names, accepting_names;
    struct RawTrans { Token state, symbol; std::vector<Token> children; };
    std::vector<RawTrans> raw_trans;

    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto& toks = lines[li];
        const std::string& kw = toks[0].text;
        if (kw == "alphabet") {
            for (std::size_t i = 1; i < toks.size(); ++i) {
                auto colon = toks[i].text.rfind(':');
                if (colon == std::string::npos || colon == 0 || colon + 1 == toks[i].text.size())
                    fail(toks[i], "expected 'symbol:arity'");
                std::string name = toks[i].text.substr(0, colon);
                char* end = nullptr;
                long ar = std::strtol(toks[i].text.c_str() + colon + 1, &end, 10);
                if (!end || *end != '\0' || ar < 0) fail(toks[i], "bad arity");
                alpha.symbols.push_back(name);
                alpha.arities.push_back(static_cast<std::uint32_t>(ar));
            }
        } else if (kw == "states") {
            for (std::size_t i = 1; i < toks.size(); ++i) states.push_back(toks[i].text);
        } else if (kw == "initial") {
            for (std::size_t i = 1; i < toks.size(); ++i) initial_names.push_back(toks[i].text);
        } else if (kw == "accepting") {
            for (std::size_t i = 1; i < toks.size(); ++i) accepting_names.push_back(toks[i].text);
        } else if (kw == "trans") {
            if (toks.size() < 3) fail(toks[0], "trans needs a state and a symbol");
            RawTrans rt{toks[1], toks[2], {}};
            for (std::size_t i = 3; i < toks.size(); ++i) rt.children.push_back(toks[i]);
            raw_trans.push_back(std::move(rt));
        } else {
            fail(toks[0], "unknown keyword '" + kw + "' in .nbta");
        }
    }

    auto state_id = [&](const Token& t) {
        for (std::size_t i = 0; i < states.size(); ++i)
            if (states[i] == t.text) return static_cast<StateId>(i);
        fail(t, "unknown state '" + t.text + "'");
    };
    std::vector<std::vector<Transition>> delta(states.size());
    for (const RawTrans& rt : raw_trans) {
        auto sym = alpha.find(rt.symbol.text);
        if (!sym) fail(rt.symbol, "unknown symbol '" + rt.symbol.text + "'");
        Transition t;
        t.symbol = *sym;
        if (rt.children.size() != alpha.arity(*sym))
            fail(rt.symbol, "symbol '" + rt.symbol.text + "' has arity " +
                                std::to_string(alpha.arity(*sym)) + " but " +
                                std::to_string(rt.children.size()) + " children were given");
        for (const Token& c : rt.children) t.children.push_back(state_id(c));
        delta[state_id(rt.state)].push_back(std::move(t));
    }
    std::vector<bool> initial(states.size(), false), accepting(states.size(), false);
    for (const std::string& n : initial_names) {
        Token t{n, 0, 0};
        initial[state_id(t)] = true;
    }
    for (const std::string& n : accepting_names) {
        Token t{n, 0, 0};
        accepting[state_id(t)] = true;
    }
    return Nbta(std::move(alpha), std::move(states), std::move(delta), std::move(initial),
                std::move(accepting));
}

std::string print_nbta(const Nbta& aut) {
    std::ostringstream out;
    out << "nbta\nalphabet";
    for (std::size_t s = 0; s < aut.alphabet().size(); ++s)
        out << ' ' << aut.alphabet().symbols[s] << ':' << aut.alphabet().arities[s];
    out << "\nstates";
    for (std::size_t x = 0; x < aut.num_states(); ++x) out << ' ' << aut.state_name(x);
    out << "\ninitial";
    for (StateId x : aut.initial_states()) out << ' ' << aut.state_name(x);
    out << "\naccepting";
    for (std::size_t x = 0; x < aut.num_states(); ++x)
        if (aut.accepting(x)) out << ' ' << aut.state_name(x);
    out << '\n';
    for (std::size_t x = 0; x < aut.num_states(); ++x)
        for (const Transition& t : aut.delta(x)) {
            out << "trans " << aut.state_name(x) << ' ' << aut.alphabet().symbols[t.symbol];
            for (StateId c : t.children) out << ' ' << aut.state_name(c);
            out << '\n';
        }
    return out.str();
}

Pbwa parse_pbwa(std::istream& in) {
    auto lines = tokenize(in);
    if (lines.empty()) fail_eof("empty .pbwa input");
    if (lines[0][0].text != "pbwa") fail(lines[0][0], "expected header 'pbwa'");

    std::vector<std::string> letters, states;
    struct RawInit { Token state, prob; };
    struct RawTrans { Token from, letter, to, prob; };
    std::vector<RawInit> raw_init;
    std::vector<RawTrans> raw_trans;
    std::vector<std::string> accepting_names;

    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto& toks = lines[li];
        const std::string& kw = toks[0].text;
        if (kw == "alphabet") {
            for (std::size_t i = 1; i < toks.size(); ++i) letters.push_back(toks[i].text);
        } else if (kw == "states") {
            for (std::size_t i = 1; i < toks.size(); ++i) states.push_back(toks[i].text);
        } else if (kw == "initial") {
            if (toks.size() != 3) fail(toks[0], "initial needs 'initial x p/q'");
            raw_init.push_back({toks[1], toks[2]});
        } else if (kw == "accepting") {
            for (std::size_t i = 1; i < toks.size(); ++i) accepting_names.push_back(toks[i].text);
        } else if (kw == "trans") {
            if (toks.size() != 5) fail(toks[0], "trans needs 'trans x a x2 p/q'");
            raw_trans.push_back({toks[1], toks[2], toks[3], toks[4]});
        } else {
            fail(toks[0], "unknown keyword '" + kw + "' in .pbwa");
        }
    }

    auto state_id = [&](const Token& t) -> std::uint32_t {
        for (std::size_t i = 0; i < states.size(); ++i)
            if (states[i] == t.text) return static_cast<std::uint32_t>(i);
        fail(t, "unknown state '" + t.text + "'");
    };
    auto letter_id = [&](const Token& t) -> std::uint32_t {
        for (std::size_t i = 0; i < letters.size(); ++i)
            if (letters[i] == t.text) return static_cast<std::uint32_t>(i);
        fail(t, "unknown letter '" + t.text + "'");
    };

    std::vector<RMatrix> mats(letters.size(), RMatrix::zero(states.size(), states.size()));
    for (const RawTrans& rt : raw_trans) {
        Rational p = parse_prob(rt.prob);
        mats[letter_id(rt.letter)].at(state_id(rt.from), state_id(rt.to)) += p;
    }
    RVec init(states.size());
    for (const RawInit& ri : raw_init) init[state_id(ri.state)] += parse_prob(ri.prob);
    std::vector<bool> accepting(states.size(), false);
    for (const std::string& n : accepting_names) {
        Token t{n, 0, 0};
        accepting[state_id(t)] = true;
    }
    return Pbwa(std::move(letters), std::move(states), std::move(mats), std::move(init),
                std::move(accepting));
}

std::string print_pbwa(const Pbwa& aut) {
    std::ostringstream out;
    out << "pbwa\nalphabet";
    for (std::size_t a = 0; a < aut.num_letters(); ++a) out << ' ' << aut.letter_name(a);
    out << "\nstates";
    for (std::size_t x = 0; x < aut.num_states(); ++x) out << ' ' << aut.state_name(x);
    out << '\n';
    for (std::size_t x = 0; x < aut.num_states(); ++x)
        if (!aut.initial()[x].is_zero())
            out << "initial " << aut.state_name(x) << ' ' << aut.initial()[x].str() << '\n';
    out << "accepting";
    for (std::size_t x = 0; x < aut.num_states(); ++x)
        if (aut.accepting(x)) out << ' ' << aut.state_name(x);
    out << '\n';
    for (std::uint32_t a = 0; a < aut.num_letters(); ++a)
        for (std::size_t x = 0; x < aut.num_states(); ++x)
            for (std::size_t x2 = 0; x2 < aut.num_states(); ++x2)
                if (!aut.matrix(a).at(x, x2).is_zero())
                    out << "trans " << aut.state_name(x) << ' ' << aut.letter_name(a) << ' '
                        << aut.state_name(x2) << ' ' << aut.matrix(a).at(x, x2).str() << '\n';
    return out.str();
}

Relation parse_relation(std::istream& in, const Nbta& x, const Nbta& y) {
    auto lines = tokenize(in);
    Relation r(x.num_states(), y.num_states());
    for (const auto& toks : lines) {
        if (toks[0].text != "pair") fail(toks[0], "expected 'pair x y' in .rel");
        if (toks.size() != 3) fail(toks[0], "pair needs exactly two states");
        auto xs = lookup([&](const std::string& n) { return x.find_state(n); }, toks[1],
                         "challenger state");
        auto ys = lookup([&](const std::string& n) { return y.find_state(n); }, toks[2],
                         "simulator state");
        r.set(xs, ys);
    }
    return r;
}

std::string print_relation(const Relation& r, const Nbta& x, const Nbta& y) {
    std::ostringstream out;
    for (auto [xs, ys] : r.pairs())
        out << "pair " << x.state_name(xs) << ' ' << y.state_name(ys) << '\n';
    return out.str();
}

namespace {

// "x=p/q" assignments into a row over named columns
void assign_entries(const std::vector<Token>& toks, std::size_t from, const Pbwa& col_aut,
                    const std::vector<std::uint32_t>& cols, RMatrix& m, std::size_t row) {
    for (std::size_t i = from; i < toks.size(); ++i) {
        auto eq = toks[i].text.find('=');
        if (eq == std::string::npos) fail(toks[i], "expected 'state=p/q'");
        std::string name = toks[i].text.substr(0, eq);
        auto id = col_aut.find_state(name);
        if (!id) fail(toks[i], "unknown state '" + name + "'");
        std::size_t col = SIZE_MAX;
        for (std::size_t c = 0; c < cols.size(); ++c)
            if (cols[c] == *id) col = c;
        if (col == SIZE_MAX) fail(toks[i], "state '" + name + "' is not in this block");
        Token prob{toks[i].text.substr(eq + 1), toks[i].line, toks[i].column + eq + 1};
        m.at(row, col) = parse_prob(prob);
    }
}

} // namespace

MatFile parse_mat(std::istream& in, const Pbwa& x, const Pbwa& y) {
    auto lines = tokenize(in);
    SimPartition part = SimPartition::of(x, y);
    MatFile out;
    out.witness.a = RMatrix::zero(y.num_states(), x.num_states());

    std::map<std::uint32_t, RMatrix> seq11, seq12;
    std::optional<RMatrix> limit11, limit12;
    std::vector<std::uint32_t> all_x(x.num_states());
    for (std::uint32_t i = 0; i < x.num_states(); ++i) all_x[i] = i;

    auto y1_row = [&](const Token& t) -> std::size_t {
        auto id = y.find_state(t.text);
        if (!id) fail(t, "unknown state '" + t.text + "'");
        for (std::size_t r = 0; r < part.y1.size(); ++r)
            if (part.y1[r] == *id) return r;
        fail(t, "state '" + t.text + "' is not a non-accepting simulator state");
    };

    for (const auto& toks : lines) {
        const std::string& kw = toks[0].text;
        if (kw == "row") {
            if (toks.size() < 2) fail(toks[0], "row needs a simulator state");
            auto id = y.find_state(toks[1].text);
            if (!id) fail(toks[1], "unknown state '" + toks[1].text + "'");
            RMatrix tmp(1, x.num_states());
            assign_entries(toks, 2, x, all_x, tmp, 0);
            for (std::size_t c = 0; c < x.num_states(); ++c) out.witness.a.at(*id, c) = tmp.at(0, c);
        } else if (kw == "seq11" || kw == "seq12") {
            if (toks.size() < 3) fail(toks[0], kw + " needs an index and a state");
            char* end = nullptr;
            long idx = std::strtol(toks[1].text.c_str(), &end, 10);
            if (!end || *end != '\0' || idx < 0) fail(toks[1], "bad sequence index");
            auto& store = (kw == "seq11") ? seq11 : seq12;
            const auto& cols = (kw == "seq11") ? part.x1 : part.x2;
            auto it = store.find(static_cast<std::uint32_t>(idx));
            if (it == store.end())
                it = store.emplace(static_cast<std::uint32_t>(idx),
                                   RMatrix::zero(part.y1.size(), cols.size())).first;
            assign_entries(toks, 3, x, cols, it->second, y1_row(toks[2]));
        } else if (kw == "limit11" || kw == "limit12") {
            if (toks.size() < 2) fail(toks[0], kw + " needs a state");
            auto& store = (kw == "limit11") ? limit11 : limit12;
            const auto& cols = (kw == "limit11") ? part.x1 : part.x2;
            if (!store) store = RMatrix::zero(part.y1.size(), cols.size());
            assign_entries(toks, 2, x, cols, *store, y1_row(toks[1]));
        } else {
            fail(toks[0], "unknown keyword '" + kw + "' in .mat");
        }
    }

    if (!seq11.empty() || !seq12.empty() || limit11 || limit12) {
        ApproxSequences seqs;
        std::uint32_t max_idx = 0;
        for (const auto& [i, m] : seq11) max_idx = std::max(max_idx, i);
        for (const auto& [i, m] : seq12) max_idx = std::max(max_idx, i);
        for (std::uint32_t i = 0; i <= max_idx; ++i) {
            auto it11 = seq11.find(i);
            auto it12 = seq12.find(i);
            seqs.a11.push_back(it11 != seq11.end() ? it11->second
                                                   : RMatrix::zero(part.y1.size(), part.x1.size()));
            seqs.a12.push_back(it12 != seq12.end() ? it12->second
                                                   : RMatrix::zero(part.y1.size(), part.x2.size()));
        }
        if (limit11 || limit12) {
            seqs.omega_limit = std::make_pair(
                limit11 ? *limit11 : RMatrix::zero(part.y1.size(), part.x1.size()),
                limit12 ? *limit12 : RMatrix::zero(part.y1.size(), part.x2.size()));
        }
        out.sequences = std::move(seqs);
    }
    return out;
}

std::string print_mat(const MatFile& m, const Pbwa& x, const Pbwa& y) {
    std::ostringstream out;
    SimPartition part = SimPartition::of(x, y);
    for (std::size_t r = 0; r < y.num_states(); ++r) {
        out << "row " << y.state_name(r);
        for (std::size_t c = 0; c < x.num_states(); ++c)
            if (!m.witness.a.at(r, c).is_zero())
                out << ' ' << x.state_name(c) << '=' << m.witness.a.at(r, c).str();
        out << '\n';
    }
    if (m.sequences) {
        auto emit = [&](const char* kw, std::size_t i, const RMatrix& mat,
                        const std::vector<std::uint32_t>& cols) {
            for (std::size_t r = 0; r < mat.rows(); ++r) {
                out << kw;
                if (kw[0] == 's') out << ' ' << i;
                out << ' ' << y.state_name(part.y1[r]);
                for (std::size_t c = 0; c < mat.cols(); ++c)
                    out << ' ' << x.state_name(cols[c]) << '=' << mat.at(r, c).str();
                out << '\n';
            }
        };
        for (std::size_t i = 0; i < m.sequences->a11.size(); ++i) {
            emit("seq11", i, m.sequences->a11[i], part.x1);
            emit("seq12", i, m.sequences->a12[i], part.x2);
        }
        if (m.sequences->omega()) {
            emit("limit11", 0, m.sequences->omega_limit->first, part.x1);
            emit("limit12", 0, m.sequences->omega_limit->second, part.x2);
        }
    }
    return out.str();
}

std::string format_word(const Pbwa& aut, const Word& w) {
    bool single = true;
    for (std::size_t a = 0; a < aut.num_letters(); ++a)
        if (aut.letter_name(a).size() != 1) single = false;
    std::ostringstream out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i && !single) out << ' ';
        out << aut.letter_name(w[i]);
    }
    if (w.empty()) out << "(empty)";
    return out.str();
}

Word parse_word(const Pbwa& aut, const std::string& text) {
    Word w;
    bool single = true;
    for (std::size_t a = 0; a < aut.num_letters(); ++a)
        if (aut.letter_name(a).size() != 1) single = false;
    if (single) {
        for (char c : text) {
            auto id = aut.find_letter(std::string(1, c));
            if (!id) throw ValidationError("unknown letter '" + std::string(1, c) + "' in word");
            w.push_back(*id);
        }
    } else {
        std::istringstream in(text);
        std::string tok;
        while (in >> tok) {
            auto id = aut.find_letter(tok);
            if (!id) throw ValidationError("unknown letter '" + tok + "' in word");
            w.push_back(*id);
        }
    }
    return w;
}

int CheckReport::exit_code() const {
    switch (verdict) {
        case Verdict::Holds: return 0;
        case Verdict::Fails: return 1;
        default: return 2;
    }
}

std::string CheckReport::to_text() const {
    std::ostringstream out;
    out << "verdict: ";
    switch (verdict) {
        case Verdict::Holds: out << "holds"; break;
        case Verdict::Fails: out << "fails"; break;
        default: out << "inconclusive"; break;
    }
    out << '\n';
    if (!condition.empty()) out << "condition: " << condition << '\n';
    if (!witness.empty()) out << "witness:\n" << witness;
    if (!witness.empty() && witness.back() != '\n') out << '\n';
    out << "config: " << config << '\n';
    out << "elapsed-ms: " << elapsed_ms << '\n';
    return out.str();
}

Nbta parse_nbta_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    return parse_nbta(in);
}

Pbwa parse_pbwa_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    return parse_pbwa(in);
}

Relation parse_relation_file(const std::string& path, const Nbta& x, const Nbta& y) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    return parse_relation(in, x, y);
}

MatFile parse_mat_file(const std::string& path, const Pbwa& x, const Pbwa& y) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    return parse_mat(in, x, y);
}

} // namespace fairsim

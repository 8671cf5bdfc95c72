#ifndef FAIRSIM_IO_HH
#define FAIRSIM_IO_HH

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fairsim/matsim.hh"
#include "fairsim/nbta.hh"
#include "fairsim/oracle.hh"
#include "fairsim/pbwa.hh"

namespace fairsim {

// Line-oriented text formats. Identifiers are whitespace-delimited UTF-8
// tokens; '#' starts a comment.
//
//   .nbta   header "nbta"; "alphabet a:2 b:2"; "states ..."; "initial ...";
//           "accepting ..."; one "trans x sigma c1 .. ck" per tuple.
//   .pbwa   header "pbwa"; "alphabet a b"; "states ..."; "initial x p/q";
//           "accepting ..."; "trans x a x' p/q" (absent entries are 0).
//   .rel    "pair x y" lines against a challenger/simulator pair.
//   .mat    "row y x1=p/q ..." lines; optional "seq11 i y x=p/q ..." /
//           "seq12 i y x=p/q ..." blocks and "limit11 y x=p/q ..." /
//           "limit12 y x=p/q ..." lines for an omega-bounded witness.

Nbta parse_nbta(std::istream& in);
Nbta parse_nbta_file(const std::string& path);
std::string print_nbta(const Nbta& aut);

Pbwa parse_pbwa(std::istream& in);
Pbwa parse_pbwa_file(const std::string& path);
std::string print_pbwa(const Pbwa& aut);

Relation parse_relation(std::istream& in, const Nbta& x, const Nbta& y);
Relation parse_relation_file(const std::string& path, const Nbta& x, const Nbta& y);
std::string print_relation(const Relation& r, const Nbta& x, const Nbta& y);

struct MatFile {
    MatrixWitness witness;
    std::optional<ApproxSequences> sequences;
};
MatFile parse_mat(std::istream& in, const Pbwa& x, const Pbwa& y);
MatFile parse_mat_file(const std::string& path, const Pbwa& x, const Pbwa& y);
std::string print_mat(const MatFile& m, const Pbwa& x, const Pbwa& y);

std::string format_word(const Pbwa& aut, const Word& w);
Word parse_word(const Pbwa& aut, const std::string& text);

// Uniform check outcome. "fails" always carries a re-checkable witness;
// "inconclusive" only arises from the probabilistic sequence search.
struct CheckReport {
    enum class Verdict { Holds, Fails, Inconclusive };
    Verdict verdict = Verdict::Fails;
    std::string condition; // violated-condition identifier, empty when holds
    std::string witness;   // witness or counterexample payload
    std::string config;    // command echo
    double elapsed_ms = 0.0;

    int exit_code() const;
    std::string to_text() const;
};

} // namespace fairsim

#endif

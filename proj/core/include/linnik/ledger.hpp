#ifndef LINNIK_LEDGER_HPP
#define LINNIK_LEDGER_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <linnik/interval.hpp>

namespace linnik
{

enum class Relation { less, less_equal, equal };
enum class Verdict { pass, fail, undecided };

const char *to_string(Relation r);
const char *to_string(Verdict v);

// A chain t_0 r_0 t_1 r_1 t_2 ... of interval terms. A link passes only when
// the upper end of the left term certifies the relation against the lower end
// of the right term.
struct LedgerEntry {
    std::string id;
    std::string statement;
    std::vector<Interval> terms;
    std::vector<Relation> relations;
    Verdict verdict = Verdict::undecided;
    double margin = 0;          // min over links of lo(right) - hi(left)
    double relative_margin = 0; // the same link's margin over |right|
    double width = 0;           // widest term
    unsigned bits = 0;          // precision that decided the entry
    std::string note;
};

// Evaluates `build` at increasing precision until every link is decided.
// `build` fills terms and relations (and may set note); when it sets
// `identity`, that exact verdict is used instead of the interval comparison.
struct EntryBuild {
    std::vector<Interval> terms;
    std::vector<Relation> relations;
    std::optional<bool> identity;
    std::string note;
};
LedgerEntry decide_entry(const std::string &id, const std::string &statement,
                         const std::function<EntryBuild()> &build, unsigned max_bits = 2048);

// All entries L0 ... L19 in order.
std::vector<LedgerEntry> run_ledger();
// A single entry by id; throws std::invalid_argument for an unknown id.
LedgerEntry ledger_entry(const std::string &id);

// (2M/(M-1)) log(M/(M-3)) < 1/(25 * 350). Throws std::invalid_argument for M < 4.
LedgerEntry m_gate_entry(std::uint64_t M);

// Enclosure of log x_0, where x_0 is the least x with 961 log(2 x^{1/3}) <= 321 log x.
Interval log_x0_threshold();

} // namespace linnik

#endif

#ifndef LINNIK_PMIN_HPP
#define LINNIK_PMIN_HPP

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <linnik/arith.hpp>

namespace linnik
{

// Least prime p = a (mod q). Windows (k W, (k + 1) W] of the progression are
// sieved with W doubling from q log^2 q. Throws std::invalid_argument unless
// q >= 2 and gcd(a, q) = 1.
u64 p_min(u64 q, u64 a);

struct PminRecord {
    u64 q = 0;
    u64 a_worst = 0;
    u64 p_max = 0;
    double exponent = 0; // log p_max / log q
    double rh_bound = 0; // (q log q)^2
};

// Max of p_min(q, a) over units a; ties go to the smallest a.
PminRecord pmin_record(u64 q);

std::string pmin_csv_header();
std::string to_csv(const PminRecord &r);
std::string to_json(const PminRecord &r);

struct SurveyOptions {
    u64 q_lo = 3;
    u64 q_hi = 100;
    unsigned threads = 1;
    // Records per checkpoint block.
    u64 block = 256;
    // Checkpoint file holding "last_q=<n>"; the survey resumes after n.
    std::optional<std::filesystem::path> checkpoint;
    // Treat p_max >= (q log q)^2 as a failure instead of a warning.
    bool strict_rh = true;
};

struct SurveyResult {
    std::vector<PminRecord> records;
    std::vector<u64> rh_violations;      // q with p_max >= (q log q)^2
    std::vector<u64> exponent_warnings;  // q >= 10 with exponent > 2.2
    u64 resumed_after = 0;               // 0 when not resumed
    bool ok() const;
    bool strict_rh = true;
};

// Streams records to sink in increasing q. Throws std::invalid_argument
// unless 2 <= q_lo <= q_hi <= 10^6, std::runtime_error on checkpoint I/O errors.
SurveyResult survey(const SurveyOptions &opt, const std::function<void(const PminRecord &)> &sink = {});

// Reads "last_q=<n>"; nullopt when the file does not exist.
std::optional<u64> read_checkpoint(const std::filesystem::path &path);
// Atomic replace through a temporary file and rename.
void write_checkpoint(const std::filesystem::path &path, u64 last_q);

} // namespace linnik

#endif

#include <linnik/pmin.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

namespace linnik
{

namespace
{

// Ascending primes, grown by doubling. Only extended between parallel blocks.
class PrimeCache
{
public:
    const std::vector<u64> &primes() const
    {
        return primes_;
    }
    u64 limit() const
    {
        return limit_;
    }
    void ensure(u64 limit)
    {
        if (limit <= limit_) {
            return;
        }
        u64 next = std::max<u64>(limit_ * 2, 1024);
        while (next < limit) {
            next *= 2;
        }
        primes_ = primes_up_to(next);
        limit_ = next;
    }

private:
    std::vector<u64> primes_;
    u64 limit_ = 0;
};

// Walks primes upward marking residues until every unit class is hit.
// Returns nullopt if the cached primes run out first.
std::optional<PminRecord> record_from_cache(u64 q, const std::vector<u64> &primes)
{
    const u64 phi = euler_phi(q);
    std::vector<std::uint8_t> seen(q, 0);
    u64 found = 0;
    PminRecord r;
    r.q = q;
    for (u64 p : primes) {
        const u64 c = p % q;
        if (seen[c] || std::gcd(c, q) != 1) {
            continue;
        }
        seen[c] = 1;
        if (++found == phi) {
            // The last class to appear is the unique worst one.
            r.a_worst = c;
            r.p_max = p;
            const double lq = std::log(static_cast<double>(q));
            r.exponent = std::log(static_cast<double>(p)) / lq;
            r.rh_bound = std::pow(static_cast<double>(q) * lq, 2);
            return r;
        }
    }
    return std::nullopt;
}

} // namespace

u64 p_min(u64 q, u64 a)
{
    if (q < 2) {
        throw std::invalid_argument("p_min: q must be at least 2");
    }
    a %= q;
    if (std::gcd(a, q) != 1) {
        throw std::invalid_argument("p_min: gcd(a, q) must be 1");
    }
    const double lq = std::log(static_cast<double>(q));
    u64 width = std::max<u64>(static_cast<u64>(static_cast<double>(q) * lq * lq), 2 * q);
    u64 lo = 0;
    for (;;) {
        const auto ps = sieve_primes(PrimeRange{lo, lo + width, q, a});
        if (!ps.empty()) {
            return ps.front();
        }
        lo += width;
        width *= 2;
    }
}

PminRecord pmin_record(u64 q)
{
    if (q < 2) {
        throw std::invalid_argument("pmin_record: q must be at least 2");
    }
    PminRecord r;
    r.q = q;
    for (u64 a = 1; a < q; ++a) {
        if (std::gcd(a, q) != 1) {
            continue;
        }
        const u64 p = p_min(q, a);
        if (p > r.p_max) {
            r.p_max = p;
            r.a_worst = a;
        }
    }
    const double lq = std::log(static_cast<double>(q));
    r.exponent = std::log(static_cast<double>(r.p_max)) / lq;
    r.rh_bound = std::pow(static_cast<double>(q) * lq, 2);
    return r;
}

std::string pmin_csv_header()
{
    return "q,a_worst,p_max,exponent,rh_bound";
}

std::string to_csv(const PminRecord &r)
{
    return fmt::format("{},{},{},{:.6g},{:.6g}", r.q, r.a_worst, r.p_max, r.exponent, r.rh_bound);
}

std::string to_json(const PminRecord &r)
{
    return fmt::format(R"({{"q":{},"a_worst":{},"p_max":{},"exponent":{:.6g},"rh_bound":{:.6g}}})", r.q, r.a_worst,
                       r.p_max, r.exponent, r.rh_bound);
}

bool SurveyResult::ok() const
{
    return !strict_rh || rh_violations.empty();
}

std::optional<u64> read_checkpoint(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in) {
        return std::nullopt;
    }
    std::string line;
    std::getline(in, line);
    const std::string key = "last_q=";
    if (line.rfind(key, 0) != 0) {
        throw std::runtime_error("checkpoint " + path.string() + ": malformed line '" + line + "'");
    }
    try {
        return std::stoull(line.substr(key.size()));
    } catch (const std::exception &) {
        throw std::runtime_error("checkpoint " + path.string() + ": malformed line '" + line + "'");
    }
}

void write_checkpoint(const std::filesystem::path &path, u64 last_q)
{
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << "last_q=" << last_q << '\n';
        out.flush();
        if (!out) {
            throw std::runtime_error("checkpoint: cannot write " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        throw std::runtime_error("checkpoint: cannot rename to " + path.string() + ": " + ec.message());
    }
}

SurveyResult survey(const SurveyOptions &opt, const std::function<void(const PminRecord &)> &sink)
{
    if (opt.q_lo < 2 || opt.q_lo > opt.q_hi || opt.q_hi > 1000000) {
        throw std::invalid_argument("survey: need 2 <= q_lo <= q_hi <= 10^6");
    }
    SurveyResult res;
    res.strict_rh = opt.strict_rh;
    u64 start = opt.q_lo;
    if (opt.checkpoint) {
        if (auto last = read_checkpoint(*opt.checkpoint)) {
            if (*last >= opt.q_lo) {
                res.resumed_after = *last;
                start = *last + 1;
            }
        }
    }
    PrimeCache cache;
    const unsigned threads = std::max(1u, opt.threads);
    const u64 block = std::max<u64>(1, opt.block);
    for (u64 b = start; b <= opt.q_hi; b += block) {
        const u64 e = std::min(opt.q_hi, b + block - 1);
        const double lq = std::log(static_cast<double>(e));
        cache.ensure(static_cast<u64>(4 * static_cast<double>(e) * lq * lq) + 1024);
        std::vector<std::optional<PminRecord>> out(e - b + 1);
        for (;;) {
            auto work = [&](unsigned t) {
                for (u64 q = b + t; q <= e; q += threads) {
                    if (!out[q - b]) {
                        out[q - b] = record_from_cache(q, cache.primes());
                    }
                }
            };
            std::vector<std::future<void>> jobs;
            for (unsigned t = 1; t < threads; ++t) {
                jobs.push_back(std::async(std::launch::async, work, t));
            }
            work(0);
            for (auto &j : jobs) {
                j.get();
            }
            if (std::all_of(out.begin(), out.end(), [](const auto &o) { return o.has_value(); })) {
                break;
            }
            cache.ensure(cache.limit() * 2);
        }
        // Ordered write-back, then the durable checkpoint.
        for (const auto &o : out) {
            const PminRecord &r = *o;
            if (static_cast<double>(r.p_max) >= r.rh_bound) {
                res.rh_violations.push_back(r.q);
            }
            if (r.q >= 10 && r.exponent > 2.2) {
                res.exponent_warnings.push_back(r.q);
            }
            if (sink) {
                sink(r);
            }
            res.records.push_back(r);
        }
        if (opt.checkpoint) {
            write_checkpoint(*opt.checkpoint, e);
        }
    }
    return res;
}

} // namespace linnik

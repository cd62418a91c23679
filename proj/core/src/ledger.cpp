#include <linnik/ledger.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace linnik
{

namespace
{

Interval q(long num, long den = 1)
{
    return Interval(mpq_class(num, den));
}

Interval log65()
{
    return log(q(6, 5));
}

EntryBuild chain(std::vector<Interval> terms, std::vector<Relation> rel, std::string note = {})
{
    EntryBuild b;
    b.terms = std::move(terms);
    b.relations = std::move(rel);
    b.note = std::move(note);
    return b;
}

Verdict link_verdict(const Interval &l, const Interval &r, Relation rel)
{
    switch (rel) {
    case Relation::less:
        if (l.hi() < r.lo()) {
            return Verdict::pass;
        }
        if (l.lo() >= r.hi()) {
            return Verdict::fail;
        }
        return Verdict::undecided;
    case Relation::less_equal:
        if (l.hi() <= r.lo()) {
            return Verdict::pass;
        }
        if (l.lo() > r.hi()) {
            return Verdict::fail;
        }
        return Verdict::undecided;
    case Relation::equal:
        if (l.is_point() && r.is_point()) {
            return l.lo() == r.lo() ? Verdict::pass : Verdict::fail;
        }
        if (l.hi() < r.lo() || r.hi() < l.lo()) {
            return Verdict::fail;
        }
        return Verdict::undecided;
    }
    return Verdict::undecided;
}

std::string fmtg(const Interval &x)
{
    return fmt::format("{:.9g}", x.mid_d());
}

Interval x0_log_enclosure()
{
    // g(L) = 321 L - 961 (log 2 + L/3) is increasing; bisect for its root.
    const Interval l2 = log(q(2));
    auto g = [&](const mpq_class &L) { return q(321) * Interval(L) - q(961) * (l2 + Interval(L) / q(3)); };
    mpq_class lo = 1, hi = 1000000;
    const mpq_class tol(1, 1L << 40);
    while (hi - lo > tol) {
        const mpq_class mid = (lo + hi) / 2;
        const Interval v = g(mid);
        if (v.lo() > 0) {
            hi = mid;
        } else if (v.hi() < 0) {
            lo = mid;
        } else {
            break;
        }
    }
    return Interval(lo, hi);
}

struct Spec {
    const char *id;
    const char *statement;
    std::function<EntryBuild()> build;
};

const std::vector<Spec> &specs()
{
    using R = Relation;
    static const std::vector<Spec> all = {
        {"L0", "41 sin^2(pi/20) >= 1",
         [] { return chain({q(1), q(41) * pow_int(sin(pi_interval() / q(20)), 2)}, {R::less_equal}); }},
        {"L1", "1 + 2 pi^2 + 1/2 + 4 pi = 2 (pi + 1/2)(pi + 3/2)",
         [] {
             // Both sides as polynomials in pi; the claim is an identity.
             const Polynomial lhs{{mpq_class(3, 2), 4, 2}};
             const Polynomial rhs = Polynomial{{2}} * Polynomial{{mpq_class(1, 2), 1}} * Polynomial{{mpq_class(3, 2), 1}};
             EntryBuild b = chain({lhs.eval(pi_interval()), rhs.eval(pi_interval())}, {R::equal},
                                  "polynomial identity in pi; equality, so a strict '<' would fail");
             b.identity = lhs == rhs;
             return b;
         }},
        {"L2", "41 (1 + 2 pi^2 + 1/2 + 4 pi) <= 1387",
         [] {
             const Interval p = pi_interval();
             return chain({q(41) * (q(3, 2) + q(2) * p * p + q(4) * p), q(1387)}, {R::less_equal});
         }},
        {"L3", "1387 * 3001/2000 < 2082", [] { return chain({q(1387) * q(3001, 2000), q(2082)}, {R::less}); }},
        {"L4", "2082 log(6/5) < 380", [] { return chain({q(2082) * log65(), q(380)}, {R::less}); }},
        {"L5", "2 * 2 * (6/5 + 2) log(6/5) <= 12/5",
         [] { return chain({q(4) * q(16, 5) * log65(), q(12, 5)}, {R::less_equal}); }},
        {"L6", "12 log^2(6/5) + (4/5) log(6/5) <= 11/20",
         [] {
             const Interval l = log65();
             return chain({q(12) * l * l + q(4, 5) * l, q(11, 20)}, {R::less_equal});
         }},
        {"L7", "380 * 2 * 20/19 <= 801", [] { return chain({q(380 * 2 * 20, 19), q(801)}, {R::less_equal}); }},
        {"L8", "1/31 < log^2(6/5) < 1/30",
         [] { return chain({q(1, 31), pow_int(log65(), 2), q(1, 30)}, {R::less, R::less}); }},
        {"L9", "801/25 e^{-80/6} < 1/19270 < 1/(961 * 20)",
         [] {
             return chain({q(801, 25) * exp(q(-80, 6)), q(1, 19270), q(1, 961 * 20)}, {R::less, R::less});
         }},
        {"L10", "380 * 961/25 <= 14608", [] { return chain({q(380 * 961, 25), q(14608)}, {R::less_equal}); }},
        {"L11", "14608 e^{-80/6} < 1/42", [] { return chain({q(14608) * exp(q(-80, 6)), q(1, 42)}, {R::less}); }},
        {"L12", "19/20 - 1/42 > 321/350", [] { return chain({q(321, 350), q(19, 20) - q(1, 42)}, {R::less}); }},
        {"L13", "961 log(2 x^{1/3}) <= 321 log x for log x >= log x0, and x0 <= q^52600 for q >= 2",
         [] {
             const Interval t = x0_log_enclosure();
             return chain({t, q(52600) * log(q(2))}, {R::less},
                          fmt::format("threshold log x0 = 1441.5 log 2 = {}", fmtg(t)));
         }},
        {"L14", "(2M/(M-1)) log(M/(M-3)) < 1/(25 * 350) at M = 52600",
         [] {
             const long M = 52600;
             return chain({q(2 * M, M - 1) * log(q(M, M - 3)), q(1, 25 * 350)}, {R::less});
         }},
        {"L15", "(5/24) log^4(6/5) > 2 log(1/(2 theta - 1)) forces 1 - theta < 6e-5",
         [] {
             // 1 - theta < (1 - exp(-g))/2 with g = (5/48) log^4(6/5).
             const Interval g = q(5, 48) * pow_int(log65(), 4);
             const Interval gate = q(5, 24) * pow_int(log65(), 4);
             return chain({(q(1) - exp(-g)) / q(2), q(6, 100000)}, {R::less},
                          fmt::format("gate (5/24) log^4(6/5) = {}", fmtg(gate)));
         }},
        {"L16", "1/24 - 1/25 = 350/210000",
         [] { return chain({Interval(mpq_class(1, 24) - mpq_class(1, 25)), q(350, 210000)}, {R::equal}); }},
        {"L17", "80 * 18 * 52600 = 75744000", [] { return chain({q(80L * 18 * 52600), q(75744000)}, {R::equal}); }},
        {"L18", "80/52600 = 1/657.5",
         [] {
             mpq_class need(80, 52600);
             need.canonicalize();
             const mpq_class e1(1, 657), e2 = parse_rational("1/675.5");
             return chain({Interval(need), Interval(parse_rational("1/657.5"))}, {R::equal},
                          fmt::format("eta = 1/657 {} 80/52600; eta = 1/675.5 {} 80/52600",
                                      e1 >= need ? ">=" : "<", e2 >= need ? ">=" : "<"));
         }},
        {"L19", "(19/20 - 1/42) / 321 >= 1/350",
         [] { return chain({q(321), q(350) * (q(19, 20) - q(1, 42))}, {R::less_equal}); }},
    };
    return all;
}

} // namespace

const char *to_string(Relation r)
{
    switch (r) {
    case Relation::less:
        return "<";
    case Relation::less_equal:
        return "<=";
    case Relation::equal:
        return "=";
    }
    return "?";
}

const char *to_string(Verdict v)
{
    switch (v) {
    case Verdict::pass:
        return "PASS";
    case Verdict::fail:
        return "FAIL";
    case Verdict::undecided:
        return "UNDECIDED";
    }
    return "?";
}

LedgerEntry decide_entry(const std::string &id, const std::string &statement, const std::function<EntryBuild()> &build,
                         unsigned max_bits)
{
    LedgerEntry e;
    e.id = id;
    e.statement = statement;
    for (unsigned bits = 64;; bits *= 2) {
        PrecisionGuard guard(bits);
        EntryBuild b = build();
        if (b.terms.size() != b.relations.size() + 1) {
            throw std::logic_error("ledger entry " + id + ": terms and relations do not chain");
        }
        e.terms = b.terms;
        e.relations = b.relations;
        e.note = b.note;
        e.bits = bits;
        e.width = 0;
        for (const auto &t : e.terms) {
            e.width = std::max(e.width, t.width().get_d());
        }
        Verdict v = Verdict::pass;
        e.margin = INFINITY;
        for (std::size_t i = 0; i < e.relations.size(); ++i) {
            const Verdict lv = link_verdict(e.terms[i], e.terms[i + 1], e.relations[i]);
            if (lv == Verdict::fail || (lv == Verdict::undecided && v == Verdict::pass)) {
                v = lv == Verdict::fail ? Verdict::fail : Verdict::undecided;
            }
            const double m = mpq_class(e.terms[i + 1].lo() - e.terms[i].hi()).get_d();
            if (m < e.margin) {
                e.margin = m;
                const double denom = std::abs(e.terms[i + 1].mid_d());
                e.relative_margin = denom > 0 ? m / denom : m;
            }
        }
        if (b.identity) {
            v = *b.identity ? Verdict::pass : Verdict::fail;
            e.margin = 0;
            e.relative_margin = 0;
        }
        e.verdict = v;
        if (v != Verdict::undecided || bits >= max_bits) {
            return e;
        }
    }
}

std::vector<LedgerEntry> run_ledger()
{
    std::vector<LedgerEntry> out;
    for (const auto &s : specs()) {
        out.push_back(decide_entry(s.id, s.statement, s.build));
    }
    return out;
}

LedgerEntry ledger_entry(const std::string &id)
{
    for (const auto &s : specs()) {
        if (id == s.id) {
            return decide_entry(s.id, s.statement, s.build);
        }
    }
    throw std::invalid_argument("unknown ledger entry: " + id);
}

LedgerEntry m_gate_entry(std::uint64_t M)
{
    if (M < 4) {
        throw std::invalid_argument("m_gate_entry: M must be >= 4");
    }
    const long m = static_cast<long>(M);
    return decide_entry(fmt::format("M-gate({})", M), "(2M/(M-1)) log(M/(M-3)) < 1/(25 * 350)", [m] {
        return chain({q(2 * m, m - 1) * log(q(m, m - 3)), q(1, 25 * 350)}, {Relation::less});
    });
}

Interval log_x0_threshold()
{
    PrecisionGuard guard(256);
    return x0_log_enclosure();
}

} // namespace linnik

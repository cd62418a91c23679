#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <linnik/arith.hpp>
#include <linnik/char_sums.hpp>
#include <linnik/characters.hpp>
#include <linnik/crop.hpp>
#include <linnik/interval.hpp>
#include <linnik/ledger.hpp>
#include <linnik/pipeline.hpp>
#include <linnik/pmin.hpp>
#include <linnik/quintet.hpp>
#include <linnik/sieve.hpp>
#include <linnik/zero_dual.hpp>
#include <linnik/zeros.hpp>

#ifndef LINNIK_VERSION
#define LINNIK_VERSION "0.0.0"
#endif

using namespace linnik;
using ojson = nlohmann::ordered_json;

namespace
{

constexpr int exit_ok = 0;
constexpr int exit_check = 1;
constexpr int exit_usage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Integer flags accept scientific notation ("1e8") as long as the value is integral.
u64 as_u64(const std::string &text, const char *flag)
{
    mpq_class v;
    try {
        v = parse_rational(text);
    } catch (const std::exception &) {
        throw UsageError(fmt::format("--{}: not a number: '{}'", flag, text));
    }
    if (v < 0 || v.get_den() != 1 || v > mpq_class(mpz_class("18446744073709551615"))) {
        throw UsageError(fmt::format("--{}: expected a non-negative integer, got '{}'", flag, text));
    }
    return mpz_class(v.get_num()).get_ui();
}

std::string num(double v)
{
    return fmt::format("{:.10g}", v);
}

// One result table plus summary fields, rendered as json, csv or table.
struct Report {
    std::string command;
    ojson params = ojson::object();
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::pair<std::string, std::string>> summary;

    void row(std::vector<std::string> r)
    {
        rows.push_back(std::move(r));
    }
    void note(const std::string &k, const std::string &v)
    {
        summary.emplace_back(k, v);
    }
};

struct Global {
    std::string format = "table";
    u64 seed = 1;
    unsigned threads = 1;
    std::string zeros;
};

void render(const Report &rep, const Global &g, std::ostream &out)
{
    if (g.format == "json") {
        ojson j;
        j["meta"] = {{"tool", "linnik"}, {"version", LINNIK_VERSION}, {"command", rep.command}, {"seed", g.seed},
                     {"threads", g.threads}, {"params", rep.params}};
        ojson rows = ojson::array();
        for (const auto &r : rep.rows) {
            ojson o;
            for (std::size_t i = 0; i < rep.columns.size() && i < r.size(); ++i) {
                o[rep.columns[i]] = r[i];
            }
            rows.push_back(o);
        }
        j["records"] = rows;
        ojson s = ojson::object();
        for (const auto &[k, v] : rep.summary) {
            s[k] = v;
        }
        j["summary"] = s;
        out << j.dump(2) << '\n';
        return;
    }
    out << "# linnik " << LINNIK_VERSION << " " << rep.command << " seed=" << g.seed << " threads=" << g.threads;
    for (const auto &[k, v] : rep.params.items()) {
        out << ' ' << k << '=' << (v.is_string() ? v.get<std::string>() : v.dump());
    }
    out << '\n';
    if (g.format == "csv") {
        for (const auto &[k, v] : rep.summary) {
            out << "# " << k << '=' << v << '\n';
        }
        if (!rep.columns.empty()) {
            for (std::size_t i = 0; i < rep.columns.size(); ++i) {
                out << (i ? "," : "") << rep.columns[i];
            }
            out << '\n';
            for (const auto &r : rep.rows) {
                for (std::size_t i = 0; i < r.size(); ++i) {
                    out << (i ? "," : "") << r[i];
                }
                out << '\n';
            }
        }
        return;
    }
    if (!rep.columns.empty()) {
        std::vector<std::size_t> w(rep.columns.size());
        for (std::size_t i = 0; i < w.size(); ++i) {
            w[i] = rep.columns[i].size();
            for (const auto &r : rep.rows) {
                if (i < r.size()) {
                    w[i] = std::max(w[i], r[i].size());
                }
            }
        }
        auto line = [&](const std::vector<std::string> &r) {
            for (std::size_t i = 0; i < r.size(); ++i) {
                out << (i ? "  " : "") << fmt::format("{:<{}}", r[i], i + 1 == r.size() ? 0 : w[i]);
            }
            out << '\n';
        };
        line(rep.columns);
        for (const auto &r : rep.rows) {
            line(r);
        }
    }
    for (const auto &[k, v] : rep.summary) {
        out << k << ": " << v << '\n';
    }
}

const char *yes(bool b)
{
    return b ? "yes" : "no";
}

std::shared_ptr<const CropFunction> crop_or_usage(const std::string &name)
{
    try {
        return make_crop(name);
    } catch (const std::exception &e) {
        throw UsageError(e.what());
    }
}

// ---- subcommands ----

struct PrimesOpts {
    std::string lo = "0", hi, q = "1", a = "0", limit = "1000";
};

int run_primes(const PrimesOpts &o, Report &rep)
{
    PrimeRange r{as_u64(o.lo, "lo"), as_u64(o.hi, "hi"), as_u64(o.q, "q"), as_u64(o.a, "a")};
    r.validate();
    const u64 limit = as_u64(o.limit, "limit");
    rep.params = {{"lo", r.lo}, {"hi", r.hi}, {"q", r.q}, {"a", r.a}};
    rep.columns = {"p"};
    u64 count = 0;
    for_each_prime(r, [&](u64 p) {
        if (count++ < limit) {
            rep.row({std::to_string(p)});
        }
    });
    rep.note("count", std::to_string(count));
    return exit_ok;
}

struct CharsOpts {
    std::string q;
    bool real_only = false;
    bool orthogonality = false;
};

int run_chars(const CharsOpts &o, Report &rep)
{
    const u64 q = as_u64(o.q, "q");
    const CharacterGroup G(q);
    rep.params = {{"q", q}, {"real_only", o.real_only}};
    rep.columns = {"index", "order", "real", "values"};
    const u64 shown = std::min<u64>(q, 12);
    for (const auto &chi : o.real_only ? G.real_characters() : G.characters()) {
        std::string vals;
        for (u64 n = 1; n <= shown; ++n) {
            const auto v = chi(n);
            vals += n > 1 ? " " : "";
            vals += v.is_zero() ? "0" : v.num == 0 ? "1" : fmt::format("e({}/{})", v.num, v.den);
        }
        rep.row({std::to_string(chi.index()), std::to_string(chi.order()), yes(chi.is_real()), vals});
    }
    rep.note("phi", std::to_string(G.size()));
    rep.note("exponent", std::to_string(G.exponent()));
    if (o.orthogonality) {
        const auto r = check_orthogonality(G);
        rep.note("orthogonality_pairs", std::to_string(r.pairs_checked));
        rep.note("orthogonality_failures", std::to_string(r.failures));
        return r.failures == 0 ? exit_ok : exit_check;
    }
    return exit_ok;
}

struct SieveOpts {
    std::string x, q = "1", a = "0";
    double y = 0, z = 0;
};

int run_sieve(const SieveOpts &o, Report &rep)
{
    const u64 x = as_u64(o.x, "x"), q = as_u64(o.q, "q"), a = as_u64(o.a, "a");
    const auto A = SieveSequence::sharp(x, q, q == 1 ? 0 : a);
    const double y = o.y > 0 ? o.y : std::pow(static_cast<double>(x), 0.5);
    const double z = o.z > 0 ? o.z : std::sqrt(y);
    rep.params = {{"x", x}, {"q", q}, {"a", a}, {"y", num(y)}, {"z", num(z)}};
    const mpq_class S = sifting_function(A, z);
    const mpq_class lo = s_minus(A, y, z), hi = s_plus(A, y, z);
    mpq_class total = lo;
    rep.columns = {"n", "S_n"};
    const auto terms = buchstab_terms(A, y, z);
    for (std::size_t n = 0; n < terms.size(); ++n) {
        if (terms[n] != 0) {
            rep.row({std::to_string(n), terms[n].get_str()});
        }
        total += terms[n];
    }
    const bool identity = total == S;
    const bool sandwich = lo <= S && S <= hi;
    rep.note("S", S.get_str());
    rep.note("S_minus", lo.get_str());
    rep.note("S_plus", hi.get_str());
    rep.note("S_minus_plus_terms", total.get_str());
    rep.note("buchstab_identity", yes(identity));
    rep.note("sandwich", yes(sandwich));
    return identity && sandwich ? exit_ok : exit_check;
}

struct QuintetOpts {
    std::string x, q = "1", a = "1", crop = "sin2";
    bool verify_ordered = false;
    double y = 0;
};

int run_quintet(const QuintetOpts &o, Report &rep)
{
    const u64 x = as_u64(o.x, "x"), q = as_u64(o.q, "q"), a = as_u64(o.a, "a");
    const auto f = crop_or_usage(o.crop);
    rep.params = {{"x", x}, {"q", q}, {"a", a}, {"crop", o.crop}};
    const auto r = quintet_sum(x, q, q == 1 ? 0 : a, *f, std::nullopt, o.verify_ordered);
    rep.note("Q", num(r.Q));
    rep.note("quintets", std::to_string(r.quintets));
    rep.note("weight_violations", std::to_string(r.weight_violations));
    bool ok = r.weight_violations == 0;
    if (o.verify_ordered) {
        rep.note("ordered_quintets", std::to_string(r.ordered_quintets));
        rep.note("ordered_match", yes(r.ordered_checked));
        ok = ok && r.ordered_checked;
    }
    if (o.y > 0) {
        const auto A = SieveSequence::sharp(x, q, q == 1 ? 0 : a);
        const auto c = combinatorial_inequality(A, o.y);
        rep.note("S", c.S.get_str());
        rep.note("S_minus", c.Sminus.get_str());
        rep.note("combinatorial_rhs", num(c.rhs));
        rep.note("combinatorial_holds", yes(c.holds));
        ok = ok && c.holds;
    }
    return ok ? exit_ok : exit_check;
}

struct DualOpts {
    double P = 1000, T = 10;
    unsigned N = 20;
    std::string draws = "50";
    std::string q = "0";
};

int run_dual(const DualOpts &o, const Global &g, Report &rep)
{
    rep.params = {{"P", num(o.P)}, {"N", o.N}, {"T", num(o.T)}, {"draws", o.draws}};
    std::vector<cplx> grid;
    for (int i = 0; i < 50; ++i) {
        grid.emplace_back(0.5 + 0.02 * (i % 10), 1.0 + 3.0 * (i / 10));
    }
    const auto s = lemma31_step_checks(o.P, grid, g.seed);
    const auto e = dual_ensemble(o.P, o.N, o.T, as_u64(o.draws, "draws"), g.seed);
    rep.note("k1_points", std::to_string(s.k1_points));
    rep.note("k1_failures", std::to_string(s.k1_failures));
    rep.note("k1_worst_ratio", num(s.k1_worst_ratio));
    rep.note("min_failures", std::to_string(s.min_failures));
    rep.note("easy_failures", std::to_string(s.easy_failures));
    rep.note("kernel_constant", num(s.kernel_constant));
    rep.note("ensemble_draws", std::to_string(e.draws));
    rep.note("ensemble_over_main", std::to_string(e.over_main));
    rep.note("ensemble_max_excess", num(e.max_excess));
    rep.note("ensemble_envelope", num(e.envelope));
    rep.note("ensemble_worst_ratio", num(e.worst_ratio));
    bool ok = s.ok();
    if (!g.zeros.empty()) {
        const auto Z = ZeroSet::load(g.zeros);
        const u64 q = o.q == "0" ? Z.conductor() : as_u64(o.q, "q");
        if (q >= 3) {
            const auto a3 = corollaryA3_check(Z, q);
            rep.note("A3_value", num(a3.value));
            rep.note("A3_limit", num(a3.limit));
            rep.note("A3_within", yes(a3.within));
        }
        rep.note("v_max", num(v_max(Z, o.P, Z.T())));
    }
    return ok ? exit_ok : exit_check;
}

struct TrioOpts {
    std::string q_from = "3", q_to = "100";
    bool a5 = false;
    double C = 0, lambda = 1.2;
};

int run_trio(const TrioOpts &o, Report &rep)
{
    const u64 lo = as_u64(o.q_from, "q-from"), hi = as_u64(o.q_to, "q-to");
    if (lo < 1 || lo > hi) {
        throw UsageError("trio: need 1 <= q-from <= q-to");
    }
    rep.params = {{"q_from", lo}, {"q_to", hi}, {"a5", o.a5}};
    bool ok = true;
    if (o.a5) {
        rep.columns = {"q", "C", "lambda", "lhs", "rhs", "ratio", "exact", "agree"};
        for (u64 q = std::max<u64>(lo, 2); q <= hi; ++q) {
            const double C = o.C > 0 ? o.C : std::max(1000.0, static_cast<double>(q * q));
            const auto r = lemmaA5_check(q, C, o.lambda, [](u64) { return 1.0; });
            rep.row({std::to_string(q), num(C), num(o.lambda), num(r.lhs_characters), num(r.rhs), num(r.ratio),
                     yes(r.exact), yes(r.agree)});
            ok = ok && r.agree && r.ratio <= 2.5;
        }
        return ok ? exit_ok : exit_check;
    }
    rep.columns = {"q", "characters", "pairs", "triples", "exhaustive", "failures"};
    u64 fails = 0;
    for (u64 q = lo; q <= hi; ++q) {
        const auto r = trio_pointwise_checks(q);
        rep.row({std::to_string(q), std::to_string(r.characters), std::to_string(r.pairs_checked),
                 std::to_string(r.triples_checked), yes(r.exhaustive), std::to_string(r.failures)});
        fails += r.failures;
        if (r.failures && rep.summary.empty()) {
            rep.note("counterexample", r.counterexample);
        }
    }
    rep.note("failures", std::to_string(fails));
    return fails == 0 ? exit_ok : exit_check;
}

struct PipelineOpts {
    std::string q = "5", a = "2", M = "52600", eta = "1/657.5", chi1 = "";
    std::string x_power;
    double x = 1e8, lambda = 1.5, beta1 = 0, log_x = 0;
    unsigned box = 0;
    bool identity = false, components = false, certificate = false, exponent = false, no_axiom = false;
};

int run_pipeline(const PipelineOpts &o, Report &rep)
{
    PipelineParams p;
    p.q = as_u64(o.q, "q");
    p.a = as_u64(o.a, "a");
    p.x = o.x;
    p.lambda = o.lambda;
    p.M = as_u64(o.M, "M");
    p.log_x_override = o.log_x;
    try {
        p.eta = parse_rational(o.eta);
        if (!o.x_power.empty()) {
            p.q_power = parse_rational(o.x_power);
        }
    } catch (const std::exception &e) {
        throw UsageError(e.what());
    }
    rep.params = {{"q", p.q},           {"a", p.a},           {"x", num(p.x)}, {"lambda", num(p.lambda)},
                  {"eta", p.eta.get_str()}, {"M", p.M}};
    const bool any = o.identity || o.components || o.certificate || o.exponent;
    bool ok = true;
    SinSquaredCrop f;

    std::optional<ExceptionalData> exc;
    if (o.beta1 > 0) {
        const CharacterGroup G(p.q);
        const auto reals = G.real_characters();
        std::optional<DirichletCharacter> chi;
        if (!o.chi1.empty()) {
            chi = G.character(as_u64(o.chi1, "chi1"));
        } else if (reals.size() > 1) {
            chi = reals[1];
        } else {
            throw UsageError("pipeline: no real non-principal character mod q");
        }
        exc = ExceptionalData::make(*chi, o.beta1, p.a);
        rep.params["beta1"] = num(o.beta1);
        rep.params["chi1"] = chi->index();
    }

    if (o.identity || !any) {
        const auto grid = box_cover(p.x, p.lambda);
        rep.columns = {"m", "n", "C", "D", "X", "tuples", "direct", "via_characters", "relative"};
        double worst = 0;
        for (const auto &b : grid.boxes) {
            const auto k = QuintetCoefficients::ones(grid, b);
            const auto r = character_decomposition_identity(p, k, f);
            rep.row({std::to_string(b.m), std::to_string(b.n), num(b.C), num(b.D), num(r.X),
                     std::to_string(r.tuples), num(r.direct), num(r.via_characters.real()), fmt::format("{:.3g}", r.relative)});
            worst = std::max(worst, r.relative);
        }
        rep.note("identity_worst_relative", fmt::format("{:.3g}", worst));
        rep.note("identity_holds", yes(worst <= 1e-9));
        ok = ok && worst <= 1e-9;
    }
    if (o.components) {
        const auto grid = box_cover(p.x, p.lambda);
        if (o.box >= grid.boxes.size()) {
            throw UsageError(fmt::format("pipeline: --box must be below {}", grid.boxes.size()));
        }
        const auto k = QuintetCoefficients::ones(grid, grid.boxes[o.box]);
        const auto c = component_bounds(p, k, exc.value_or(ExceptionalData::none()), f);
        rep.note("Q0", num(c.Q0));
        rep.note("Q0_model", num(c.Q0_model));
        rep.note("Qstar_measured", num(c.Qstar_measured));
        rep.note("Qstar_cauchy", num(c.Qstar_cauchy));
        rep.note("T_max", num(c.T_max));
        rep.note("T_max_bound", num(c.T_max_bound));
        if (c.Qstar_bound) {
            rep.note("Qstar_bound", num(*c.Qstar_bound));
        }
        rep.note("C1_bounds", yes(c.c1_upper && c.c1_lower.value_or(true)));
        rep.note("D1_bounds", yes(c.d1_upper && c.d1_lower.value_or(true)));
        ok = ok && c.c1_upper && c.d1_upper && c.c1_lower.value_or(true) && c.d1_lower.value_or(true) && c.cauchy_holds;
        if (c.Q1) {
            rep.note("Q1", num(*c.Q1));
            rep.note("Q11", num(*c.Q11));
            rep.note("Omega", num(*c.Omega));
            const bool sw = *c.sandwich_lower && *c.sandwich_middle && *c.sandwich_upper;
            rep.note("sandwich", yes(sw));
            rep.note("chain_first", yes(*c.chain_first_holds));
            ok = ok && sw && *c.chain_first_holds;
        }
    }
    if (o.certificate) {
        const auto cert = lemma61_certificate(p, exc.value_or(ExceptionalData::none()), f, !o.no_axiom);
        if (rep.columns.empty()) {
            rep.columns = {"condition", "verdict", "detail"};
            for (const auto &c : cert.conditions) {
                rep.row({c.name, to_string(c.verdict), c.detail});
            }
        }
        rep.note("case", to_string(cert.bound_case));
        rep.note("explanation", cert.explanation);
        if (cert.log_lower_bound) {
            rep.note("log_lower_bound", num(*cert.log_lower_bound));
        }
        ok = ok && cert.emitted();
    }
    if (o.exponent) {
        const auto e = linnik_exponent(p.M, p.eta, !o.no_axiom);
        if (rep.columns.empty()) {
            rep.columns = {"item", "result", "detail"};
            for (const auto &c : e.audit) {
                rep.row({c.name, to_string(c.verdict), c.detail});
            }
            for (const auto &c : e.cases) {
                rep.row({c.name, c.exponent ? c.exponent->get_str() : "uncovered", c.justification});
            }
        }
        rep.note("L", e.L ? e.L->get_str() : "refused");
        if (!e.refusal.empty()) {
            rep.note("refusal", e.refusal);
        }
        ok = ok && e.L.has_value();
    }
    return ok ? exit_ok : exit_check;
}

int run_ledger_cmd(bool skeleton, Report &rep)
{
    rep.columns = {"id", "claim", "verdict", "margin", "bits", "note"};
    bool ok = true;
    auto add = [&](const LedgerEntry &e) {
        rep.row({e.id, e.statement, to_string(e.verdict), fmt::format("{:.6g}", e.margin), std::to_string(e.bits), e.note});
        ok = ok && e.verdict == Verdict::pass;
    };
    for (const auto &e : run_ledger()) {
        add(e);
    }
    if (skeleton) {
        for (const auto &e : skeleton_checks()) {
            add(e);
        }
    }
    return ok ? exit_ok : exit_check;
}

struct PminOpts {
    std::string from = "3", to = "100";
    std::string checkpoint, out;
    bool warn_only = false;
};

int run_pmin(const PminOpts &o, const Global &g, Report &rep)
{
    SurveyOptions s;
    s.q_lo = as_u64(o.from, "from");
    s.q_hi = as_u64(o.to, "to");
    s.threads = g.threads;
    s.strict_rh = !o.warn_only;
    if (!o.checkpoint.empty()) {
        s.checkpoint = o.checkpoint;
    }
    rep.params = {{"from", s.q_lo}, {"to", s.q_hi}};
    rep.columns = {"q", "a_worst", "p_max", "exponent", "rh_bound"};
    std::ofstream file;
    if (!o.out.empty()) {
        // Resuming appends to the partial CSV; a fresh run writes the header.
        const bool resume = s.checkpoint && read_checkpoint(*s.checkpoint).has_value();
        file.open(o.out, resume ? std::ios::app : std::ios::trunc);
        if (!file) {
            throw std::runtime_error("pmin: cannot open " + o.out);
        }
        if (!resume) {
            file << pmin_csv_header() << '\n';
        }
    }
    const auto res = survey(s, [&](const PminRecord &r) {
        if (file.is_open()) {
            file << to_csv(r) << '\n';
            file.flush();
        }
        rep.row({std::to_string(r.q), std::to_string(r.a_worst), std::to_string(r.p_max),
                 fmt::format("{:.6g}", r.exponent), fmt::format("{:.6g}", r.rh_bound)});
    });
    rep.note("records", std::to_string(res.records.size()));
    rep.note("rh_violations", std::to_string(res.rh_violations.size()));
    rep.note("exponent_warnings", std::to_string(res.exponent_warnings.size()));
    for (u64 q : res.rh_violations) {
        std::cerr << "warning: p_max(" << q << ") >= (q log q)^2\n";
    }
    return res.ok() ? exit_ok : exit_check;
}

struct ExplicitOpts {
    std::string x = "10000", q = "1", a = "1", crop = "sin2", zeta;
    double tolerance = 0.05;
};

int run_explicit(const ExplicitOpts &o, const Global &g, Report &rep)
{
    const u64 x = as_u64(o.x, "x"), q = as_u64(o.q, "q"), a = as_u64(o.a, "a");
    const auto f = crop_or_usage(o.crop);
    if (g.zeros.empty()) {
        throw UsageError("explicit: --zeros is required");
    }
    rep.params = {{"x", x}, {"q", q}, {"a", a}, {"crop", o.crop}, {"zeros", g.zeros}};
    const ZeroSet Z = ZeroSet::load(g.zeros);
    ExplicitFormulaReport r;
    if (q == 1) {
        r = explicit_formula_psi(x, 1, 0, *f, {}, &Z);
    } else {
        // The zero file belongs to the unique non-principal character mod q.
        const CharacterGroup G(q);
        if (G.size() != 2) {
            throw UsageError("explicit: a single zero file covers only moduli with phi(q) = 2");
        }
        std::map<u64, ZeroSet> data{{1, Z}};
        std::optional<ZeroSet> zeta;
        if (!o.zeta.empty()) {
            zeta = ZeroSet::load(o.zeta);
        }
        r = explicit_formula_psi(x, q, a, *f, data, zeta ? &*zeta : nullptr);
    }
    rep.note("direct", num(r.direct));
    rep.note("main", num(r.main));
    rep.note("formula", num(r.formula));
    rep.note("discrepancy", num(r.discrepancy));
    rep.note("relative_to_main", fmt::format("{:.4g}", r.relative));
    rep.note("zeros_used", std::to_string(r.zeros_used));
    return r.relative <= o.tolerance ? exit_ok : exit_check;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"linnik: least primes in progressions, sieve and zero-dual experiments"};
    app.set_config("--config", "", "Config file of 'key = value' lines; flags given on the command line win");
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}))->capture_default_str();
    app.add_option("--seed", g.seed, "Seed for randomized ensembles")->capture_default_str();
    app.add_option("--threads", g.threads, "Worker thread cap")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--zeros", g.zeros, "Zero-data file ('conductor', 'character' directives, '[beta] gamma' lines)");

    PrimesOpts po;
    auto *primes = app.add_subcommand("primes", "Primes p in (lo, hi], optionally p = a (mod q). Columns: p");
    primes->add_option("--lo", po.lo)->capture_default_str();
    primes->add_option("--hi", po.hi)->required();
    primes->add_option("--q", po.q)->capture_default_str();
    primes->add_option("--a", po.a)->capture_default_str();
    primes->add_option("--limit", po.limit, "Rows printed (the count covers all)")->capture_default_str();

    CharsOpts co;
    auto *chars = app.add_subcommand("chars", "Dirichlet characters mod q. Columns: index,order,real,values");
    chars->add_option("--q", co.q)->required();
    chars->add_flag("--real-only", co.real_only);
    chars->add_flag("--orthogonality", co.orthogonality, "Exact orthogonality check over all residue pairs");

    SieveOpts so;
    auto *sieve = app.add_subcommand("sieve", "Beta-sieve bounds and Buchstab terms on (x, 2x]. Columns: n,S_n");
    sieve->add_option("--x", so.x)->required();
    sieve->add_option("--q", so.q)->capture_default_str();
    sieve->add_option("--a", so.a)->capture_default_str();
    sieve->add_option("--y", so.y, "Level (default sqrt x)");
    sieve->add_option("--z", so.z, "Sifting limit (default sqrt y)");

    QuintetOpts qo;
    auto *quintet = app.add_subcommand("quintet", "Prime quintet sum Q(A); summary fields only");
    quintet->add_option("--x", qo.x)->required();
    quintet->add_option("--q", qo.q)->capture_default_str();
    quintet->add_option("--a", qo.a)->capture_default_str();
    quintet->add_option("--crop", qo.crop)->check(CLI::IsMember({"sin2", "sharp", "bump"}))->capture_default_str();
    quintet->add_flag("--verify-ordered", qo.verify_ordered);
    quintet->add_option("--y", qo.y, "Also test S(A, sqrt y) >= S^-(A, y, sqrt y) + Q/24");

    DualOpts dopt;
    auto *dual = app.add_subcommand("dual", "Zero-dual kernel checks and the synthetic ensemble; summary fields only");
    dual->add_option("--P", dopt.P)->capture_default_str();
    dual->add_option("--N", dopt.N)->capture_default_str();
    dual->add_option("--T", dopt.T)->capture_default_str();
    dual->add_option("--draws", dopt.draws)->capture_default_str();
    dual->add_option("--q", dopt.q, "Modulus for the zero-density statistic (default: file conductor)");

    TrioOpts to;
    auto *trio = app.add_subcommand("trio", "Pointwise trio/duo inequalities per q, or the large-sieve check with --a5");
    trio->add_option("--q-from", to.q_from)->capture_default_str();
    trio->add_option("--q-to", to.q_to)->capture_default_str();
    trio->add_flag("--a5", to.a5);
    trio->add_option("--C", to.C, "Segment start (default max(q^2, 1000))");
    trio->add_option("--lambda", to.lambda)->capture_default_str();

    PipelineOpts pl;
    auto *pipeline = app.add_subcommand("pipeline", "Quintet decomposition, component bounds, certificates, exponent");
    pipeline->add_option("--q", pl.q)->capture_default_str();
    pipeline->add_option("--a", pl.a)->capture_default_str();
    pipeline->add_option("--x", pl.x)->capture_default_str();
    pipeline->add_option("--log-x", pl.log_x, "log x for x beyond double range");
    pipeline->add_option("--x-power", pl.x_power, "x = q^E exactly (rational E)");
    pipeline->add_option("--lambda", pl.lambda)->capture_default_str();
    pipeline->add_option("--eta", pl.eta)->capture_default_str();
    pipeline->add_option("--M", pl.M)->capture_default_str();
    pipeline->add_option("--beta1", pl.beta1, "Exceptional real zero");
    pipeline->add_option("--chi1", pl.chi1, "Index of the exceptional character (default: first real non-principal)");
    pipeline->add_option("--box", pl.box)->capture_default_str();
    pipeline->add_flag("--identity", pl.identity, "Direct vs character-side decomposition over every box (default)");
    pipeline->add_flag("--components", pl.components);
    pipeline->add_flag("--certificate", pl.certificate);
    pipeline->add_flag("--exponent", pl.exponent);
    pipeline->add_flag("--no-axiom", pl.no_axiom, "Disable the external Selberg-sieve bound");

    bool skeleton = false;
    auto *ledger = app.add_subcommand("ledger", "Interval-certified constant ledger. Columns: id,claim,verdict,margin,bits,note");
    ledger->add_flag("--skeleton", skeleton, "Append the summation skeleton checks");

    PminOpts pm;
    auto *pmin = app.add_subcommand("pmin", "Least-prime survey. Columns: q,a_worst,p_max,exponent,rh_bound");
    pmin->add_option("--from", pm.from)->capture_default_str();
    pmin->add_option("--to", pm.to)->capture_default_str();
    pmin->add_option("--checkpoint", pm.checkpoint, "File holding last_q=<n>; the survey resumes after n");
    pmin->add_option("--out", pm.out, "CSV file, appended to when resuming");
    pmin->add_flag("--warn-only", pm.warn_only, "Do not fail on p_max >= (q log q)^2");

    ExplicitOpts eo;
    auto *expl = app.add_subcommand("explicit", "Smoothed psi(x; q, a) against the explicit formula; summary fields only");
    expl->add_option("--x", eo.x)->capture_default_str();
    expl->add_option("--q", eo.q)->capture_default_str();
    expl->add_option("--a", eo.a)->capture_default_str();
    expl->add_option("--crop", eo.crop)->check(CLI::IsMember({"sin2", "sharp", "bump"}))->capture_default_str();
    expl->add_option("--zeta", eo.zeta, "Zeta zeros for the principal character (q > 1)");
    expl->add_option("--tolerance", eo.tolerance, "Allowed discrepancy relative to the main term")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return exit_usage;
    }

    Report rep;
    int code = exit_ok;
    try {
        const auto *sub = app.get_subcommands().front();
        rep.command = sub->get_name();
        if (sub == primes) {
            code = run_primes(po, rep);
        } else if (sub == chars) {
            code = run_chars(co, rep);
        } else if (sub == sieve) {
            code = run_sieve(so, rep);
        } else if (sub == quintet) {
            code = run_quintet(qo, rep);
        } else if (sub == dual) {
            code = run_dual(dopt, g, rep);
        } else if (sub == trio) {
            code = run_trio(to, rep);
        } else if (sub == pipeline) {
            code = run_pipeline(pl, rep);
        } else if (sub == ledger) {
            code = run_ledger_cmd(skeleton, rep);
        } else if (sub == pmin) {
            code = run_pmin(pm, g, rep);
        } else if (sub == expl) {
            code = run_explicit(eo, g, rep);
        }
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_check;
    }
    render(rep, g, std::cout);
    return code;
}

#include <linnik/interval.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <stdexcept>

namespace linnik
{

namespace
{

thread_local unsigned g_bits = 256;

mpq_class round_down(const mpq_class &q, unsigned bits)
{
    mpz_class t;
    mpz_mul_2exp(t.get_mpz_t(), q.get_num_mpz_t(), bits);
    mpz_fdiv_q(t.get_mpz_t(), t.get_mpz_t(), q.get_den_mpz_t());
    mpz_class d;
    mpz_ui_pow_ui(d.get_mpz_t(), 2, bits);
    mpq_class r(t, d);
    r.canonicalize();
    return r;
}

mpq_class round_up(const mpq_class &q, unsigned bits)
{
    mpz_class t;
    mpz_mul_2exp(t.get_mpz_t(), q.get_num_mpz_t(), bits);
    mpz_cdiv_q(t.get_mpz_t(), t.get_mpz_t(), q.get_den_mpz_t());
    mpz_class d;
    mpz_ui_pow_ui(d.get_mpz_t(), 2, bits);
    mpq_class r(t, d);
    r.canonicalize();
    return r;
}

mpq_class abs_max(const Interval &x)
{
    return std::max(abs(x.lo()), abs(x.hi()));
}

// 2^-(bits + 8): series stop once terms fall below this.
mpq_class series_eps()
{
    mpz_class d;
    mpz_ui_pow_ui(d.get_mpz_t(), 2, Interval::precision() + 8);
    return mpq_class(1, d);
}

Interval symmetric(const mpq_class &r)
{
    return Interval(-r, r);
}

// atan(1/k) for integer k >= 2.
Interval atan_inv(unsigned long k)
{
    const mpq_class eps = series_eps();
    Interval sum(0);
    mpz_class kp = k; // k^(2n+1)
    const mpz_class k2 = mpz_class(k) * k;
    for (unsigned long n = 0;; ++n) {
        const mpq_class term(1, kp * (2 * n + 1));
        const Interval t = round_out(Interval(term));
        sum = n % 2 == 0 ? sum + t : sum - t;
        kp *= k2;
        const mpq_class next(1, kp * (2 * n + 3));
        if (next < eps) {
            return round_out(sum + symmetric(next));
        }
    }
}

Interval exp_point(const mpq_class &q)
{
    // Halve until |r| <= 1/2.
    unsigned k = 0;
    mpq_class r = q;
    while (abs(r) > mpq_class(1, 2)) {
        r /= 2;
        ++k;
    }
    const mpq_class eps = series_eps();
    Interval sum(1), term(1);
    const Interval ri(r);
    mpq_class mag = 1; // upper bound on |r|^n/n!, kept finer than the interval grid
    for (unsigned long n = 1;; ++n) {
        term = round_out(term * ri / Interval(static_cast<long>(n)));
        sum = sum + term;
        mag = round_up(mag * abs(r) / n, Interval::precision() + 32);
        const mpq_class bound = mag * abs(r) / (n + 1);
        if (bound < eps) {
            // Lagrange remainder <= e^{1/2} |r|^{n+1}/(n+1)! <= 2 |r|^{n+1}/(n+1)!.
            sum = round_out(sum + symmetric(2 * bound));
            break;
        }
    }
    for (unsigned i = 0; i < k; ++i) {
        sum = sum * sum;
    }
    return sum;
}

// 2 atanh(t) for |t| <= 1/2.
Interval atanh2(const Interval &t)
{
    const mpq_class eps = series_eps();
    const mpq_class tm = abs_max(t);
    const Interval t2 = round_out(t * t);
    Interval power = t, sum = t;
    mpq_class mag = tm; // upper bound on |t|^{2n+1}
    for (unsigned long n = 1;; ++n) {
        power = round_out(power * t2);
        sum = sum + round_out(power / Interval(static_cast<long>(2 * n + 1)));
        mag = round_up(mag * tm * tm, Interval::precision() + 32);
        // Tail sum_{j > n} |t|^{2j+1}/(2j+1) <= |t|^{2n+3} / ((2n+3)(1 - t^2)).
        const mpq_class next = mag * tm * tm;
        if (next < eps) {
            const mpq_class tail = next / ((2 * n + 3) * (1 - tm * tm));
            sum = round_out(sum + symmetric(tail));
            break;
        }
    }
    return sum * Interval(2);
}

Interval log2_interval()
{
    static thread_local std::map<unsigned, Interval> cache;
    const unsigned bits = Interval::precision();
    auto it = cache.find(bits);
    if (it != cache.end()) {
        return it->second;
    }
    const Interval v = atanh2(Interval(mpq_class(1, 3)));
    cache.emplace(bits, v);
    return v;
}

Interval log_point(const mpq_class &y)
{
    if (y <= 0) {
        throw std::domain_error("log: argument must be positive");
    }
    // y = 2^k m with m in [1/sqrt 2, sqrt 2) roughly; k from the bit sizes.
    const long k = static_cast<long>(mpz_sizeinbase(y.get_num_mpz_t(), 2)) -
                   static_cast<long>(mpz_sizeinbase(y.get_den_mpz_t(), 2));
    mpq_class m = y;
    if (k > 0) {
        m /= mpq_class(mpz_class(1) << static_cast<unsigned long>(k));
    } else if (k < 0) {
        m *= mpq_class(mpz_class(1) << static_cast<unsigned long>(-k));
    }
    long kk = k;
    while (m > mpq_class(3, 2)) {
        m /= 2;
        ++kk;
    }
    while (m < mpq_class(3, 4)) {
        m *= 2;
        --kk;
    }
    const mpq_class t = (m - 1) / (m + 1);
    Interval v = atanh2(Interval(t));
    if (kk != 0) {
        v = v + log2_interval() * Interval(kk);
    }
    return round_out(v);
}

Interval sin_point(const mpq_class &q)
{
    const mpq_class eps = series_eps();
    const Interval x(q);
    const Interval x2 = round_out(x * x);
    Interval term = x, sum = x;
    mpq_class mag = abs(q); // upper bound on |x|^{2n+1}/(2n+1)!
    for (unsigned long n = 1;; ++n) {
        term = round_out(-(term * x2) / Interval(static_cast<long>((2 * n) * (2 * n + 1))));
        sum = sum + term;
        mag = round_up(mag * abs(q) * abs(q) / ((2 * n) * (2 * n + 1)), Interval::precision() + 32);
        const mpq_class next = mag * abs(q) * abs(q) / ((2 * n + 2) * (2 * n + 3));
        if (next < eps) {
            sum = round_out(sum + symmetric(next));
            break;
        }
    }
    return sum;
}

mpq_class parse_decimal(const std::string &s)
{
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        neg = s[i] == '-';
        ++i;
    }
    std::string digits;
    long frac = 0;
    bool dot = false, any = false;
    for (; i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.'); ++i) {
        if (s[i] == '.') {
            if (dot) {
                throw std::invalid_argument("parse_rational: bad number '" + s + "'");
            }
            dot = true;
            continue;
        }
        any = true;
        digits += s[i];
        if (dot) {
            ++frac;
        }
    }
    if (!any) {
        throw std::invalid_argument("parse_rational: bad number '" + s + "'");
    }
    long ex = 0;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        std::size_t used = 0;
        try {
            ex = std::stol(s.substr(i), &used);
        } catch (const std::exception &) {
            throw std::invalid_argument("parse_rational: bad exponent in '" + s + "'");
        }
        i += used;
    }
    if (i != s.size()) {
        throw std::invalid_argument("parse_rational: trailing characters in '" + s + "'");
    }
    mpq_class v{mpz_class(digits, 10)};
    const long e = ex - frac;
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(e)));
    if (e >= 0) {
        v *= p;
    } else {
        v /= p;
    }
    v.canonicalize();
    return neg ? -v : v;
}

} // namespace

Interval::Interval(const mpq_class &v) : lo_(v), hi_(v)
{
    lo_.canonicalize();
    hi_.canonicalize();
}

Interval::Interval(long v) : lo_(v), hi_(v) {}

Interval::Interval(const mpq_class &lo, const mpq_class &hi) : lo_(lo), hi_(hi)
{
    lo_.canonicalize();
    hi_.canonicalize();
    if (lo > hi) {
        throw std::invalid_argument("Interval: lo > hi");
    }
}

unsigned Interval::precision()
{
    return g_bits;
}

void Interval::set_precision(unsigned bits)
{
    if (bits < 16) {
        throw std::invalid_argument("Interval: precision must be >= 16 bits");
    }
    g_bits = bits;
}

PrecisionGuard::PrecisionGuard(unsigned bits) : saved_(Interval::precision())
{
    Interval::set_precision(bits);
}

PrecisionGuard::~PrecisionGuard()
{
    g_bits = saved_;
}

Interval round_out(const Interval &x)
{
    return Interval(round_down(x.lo(), g_bits), round_up(x.hi(), g_bits));
}

Interval hull(const Interval &a, const Interval &b)
{
    return Interval(std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

Interval operator+(const Interval &a, const Interval &b)
{
    return round_out(Interval(a.lo_ + b.lo_, a.hi_ + b.hi_));
}

Interval operator-(const Interval &a, const Interval &b)
{
    return round_out(Interval(a.lo_ - b.hi_, a.hi_ - b.lo_));
}

Interval operator-(const Interval &a)
{
    return Interval(-a.hi_, -a.lo_);
}

Interval operator*(const Interval &a, const Interval &b)
{
    const mpq_class p[4] = {a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
    return round_out(Interval(*std::min_element(p, p + 4), *std::max_element(p, p + 4)));
}

Interval operator/(const Interval &a, const Interval &b)
{
    if (b.lo_ <= 0 && b.hi_ >= 0) {
        throw std::domain_error("Interval: division by an interval containing 0");
    }
    const mpq_class p[4] = {a.lo_ / b.lo_, a.lo_ / b.hi_, a.hi_ / b.lo_, a.hi_ / b.hi_};
    return round_out(Interval(*std::min_element(p, p + 4), *std::max_element(p, p + 4)));
}

Interval pow_int(const Interval &x, unsigned n)
{
    Interval r(1);
    for (unsigned i = 0; i < n; ++i) {
        r = r * x;
    }
    if (n % 2 == 0 && x.lo() < 0 && x.hi() > 0) {
        r = Interval(0, r.hi());
    }
    return r;
}

Interval pi_interval()
{
    static thread_local std::map<unsigned, Interval> cache;
    auto it = cache.find(g_bits);
    if (it != cache.end()) {
        return it->second;
    }
    const Interval v = Interval(16) * atan_inv(5) - Interval(4) * atan_inv(239);
    cache.emplace(g_bits, v);
    return v;
}

Interval euler_gamma_interval()
{
    return Interval(parse_rational("0.5772156649015328"), parse_rational("0.5772156649015329"));
}

Interval exp(const Interval &x)
{
    return Interval(exp_point(x.lo()).lo(), exp_point(x.hi()).hi());
}

Interval log(const Interval &x)
{
    if (x.lo() <= 0) {
        throw std::domain_error("log: interval must be positive");
    }
    return Interval(log_point(x.lo()).lo(), log_point(x.hi()).hi());
}

Interval sin(const Interval &x)
{
    // 157/100 < pi/2.
    const mpq_class lim(157, 100);
    if (x.lo() < -lim || x.hi() > lim) {
        throw std::domain_error("sin: interval outside the monotone range [-pi/2, pi/2]");
    }
    return Interval(sin_point(x.lo()).lo(), sin_point(x.hi()).hi());
}

Interval sqrt(const Interval &x)
{
    if (x.lo() < 0) {
        throw std::domain_error("sqrt: negative argument");
    }
    const unsigned b = g_bits;
    auto scaled_root = [&](const mpq_class &v, bool up) {
        mpz_class t;
        mpz_mul_2exp(t.get_mpz_t(), v.get_num_mpz_t(), 2 * b);
        if (up) {
            mpz_cdiv_q(t.get_mpz_t(), t.get_mpz_t(), v.get_den_mpz_t());
        } else {
            mpz_fdiv_q(t.get_mpz_t(), t.get_mpz_t(), v.get_den_mpz_t());
        }
        mpz_class s;
        mpz_sqrt(s.get_mpz_t(), t.get_mpz_t());
        if (up && s * s != t) {
            s += 1;
        }
        mpz_class d;
        mpz_ui_pow_ui(d.get_mpz_t(), 2, b);
        mpq_class r(s, d);
        r.canonicalize();
        return r;
    };
    return Interval(scaled_root(x.lo(), false), scaled_root(x.hi(), true));
}

mpq_class parse_rational(const std::string &text)
{
    std::string s;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) {
            s += ch;
        }
    }
    const auto slash = s.find('/');
    if (slash == std::string::npos) {
        return parse_decimal(s);
    }
    const mpq_class num = parse_decimal(s.substr(0, slash));
    const mpq_class den = parse_decimal(s.substr(slash + 1));
    if (den == 0) {
        throw std::invalid_argument("parse_rational: zero denominator in '" + text + "'");
    }
    mpq_class v = num / den;
    v.canonicalize();
    return v;
}

Polynomial Polynomial::operator+(const Polynomial &o) const
{
    Polynomial r;
    r.c.assign(std::max(c.size(), o.c.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        r.c[i] += c[i];
    }
    for (std::size_t i = 0; i < o.c.size(); ++i) {
        r.c[i] += o.c[i];
    }
    return r;
}

Polynomial Polynomial::operator*(const Polynomial &o) const
{
    Polynomial r;
    if (c.empty() || o.c.empty()) {
        return r;
    }
    r.c.assign(c.size() + o.c.size() - 1, 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (std::size_t j = 0; j < o.c.size(); ++j) {
            r.c[i + j] += c[i] * o.c[j];
        }
    }
    return r;
}

bool Polynomial::operator==(const Polynomial &o) const
{
    const std::size_t n = std::max(c.size(), o.c.size());
    for (std::size_t i = 0; i < n; ++i) {
        const mpq_class a = i < c.size() ? c[i] : mpq_class(0);
        const mpq_class b = i < o.c.size() ? o.c[i] : mpq_class(0);
        if (a != b) {
            return false;
        }
    }
    return true;
}

Interval Polynomial::eval(const Interval &t) const
{
    Interval r(0);
    for (std::size_t i = c.size(); i-- > 0;) {
        r = r * t + Interval(c[i]);
    }
    return r;
}

} // namespace linnik

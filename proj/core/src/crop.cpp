#include <linnik/crop.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace linnik
{

using std::numbers::pi;

namespace
{

// Bisects until a panel's error is within tol times the integral of |f| over
// the whole range, so cancelling integrands do not recurse to the depth cap.
void gk_panel(const std::function<double(double)> &f, double a, double b, double abs_tol, int depth, QuadResult &acc)
{
    double err = 0, l1 = 0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 0, 0, &err, &l1);
    // The single-panel estimate refers to the reference interval [-1, 1].
    err *= 0.5 * (b - a);
    if (err <= abs_tol || depth == 0) {
        acc.value += v;
        acc.error += err;
        return;
    }
    const double m = 0.5 * (a + b);
    gk_panel(f, a, m, abs_tol / 2, depth - 1, acc);
    gk_panel(f, m, b, abs_tol / 2, depth - 1, acc);
}

} // namespace

QuadResult integrate(const std::function<double(double)> &f, double a, double b, double tol)
{
    QuadResult r;
    if (a == b) {
        return r;
    }
    double err = 0, l1 = 0;
    boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 0, 0, &err, &l1);
    const double floor = std::numeric_limits<double>::min();
    gk_panel(f, a, b, std::max(tol * l1, floor), 30, r);
    return r;
}

ComplexQuadResult integrate_complex(const std::function<std::complex<double>(double)> &f, double a, double b,
                                    int panels, double tol)
{
    ComplexQuadResult out;
    panels = std::max(1, panels);
    const double w = (b - a) / panels;
    for (int k = 0; k < panels; ++k) {
        const double lo = a + k * w, hi = k + 1 == panels ? b : a + (k + 1) * w;
        const auto r = integrate([&](double u) { return f(u).real(); }, lo, hi, tol);
        const auto i = integrate([&](double u) { return f(u).imag(); }, lo, hi, tol);
        out.value += std::complex<double>(r.value, i.value);
        out.error += r.error + i.error;
    }
    return out;
}

double CropFunction::total_variation(double a, double b) const
{
    a = std::max(a, 1.0);
    b = std::min(b, 2.0);
    if (a >= b) {
        return 0;
    }
    const double m = mode();
    const double fa = (*this)(a), fb = (*this)(b);
    if (b <= m) {
        return fb - fa;
    }
    if (a >= m) {
        return fa - fb;
    }
    const double fm = (*this)(m);
    return (fm - fa) + (fm - fb);
}

double CropFunction::first_moment_abs_derivative() const
{
    const double m = mode();
    auto g = [this](double v) { return v * derivative(1, v); };
    return integrate(g, 1, m).value - integrate(g, m, 2).value;
}

ComplexQuadResult CropFunction::mellin(std::complex<double> s) const
{
    const double sr = s.real() - 1, si = s.imag();
    auto re = [&](double y) { return (*this)(y)*std::pow(y, sr) * std::cos(si * std::log(y)); };
    auto im = [&](double y) { return (*this)(y)*std::pow(y, sr) * std::sin(si * std::log(y)); };
    // Split the range so every panel sees a bounded number of oscillations.
    const int pieces = std::max(1, static_cast<int>(std::ceil(std::abs(si) * std::log(2.0) / (2 * pi))));
    ComplexQuadResult out;
    for (int k = 0; k < pieces; ++k) {
        const double a = std::pow(2.0, static_cast<double>(k) / pieces);
        const double b = std::pow(2.0, static_cast<double>(k + 1) / pieces);
        const auto r = integrate(re, a, b, 1e-13);
        const auto i = integrate(im, a, b, 1e-13);
        out.value += std::complex<double>(r.value, i.value);
        out.error += r.error + i.error;
    }
    return out;
}

double SinSquaredCrop::default_scale()
{
    return 1.0 / (8 * pi * pi * pi * pi);
}

SinSquaredCrop::SinSquaredCrop(double c) : c_(c)
{
    if (!(c > 0)) {
        throw std::invalid_argument("SinSquaredCrop: scale must be positive");
    }
}

double SinSquaredCrop::derivative(int j, double u) const
{
    if (u < 1 || u > 2) {
        return 0;
    }
    const double t = 2 * pi * (u - 1);
    switch (j) {
    case 0: {
        const double s = std::sin(pi * (u - 1));
        return c_ * s * s;
    }
    case 1:
        return c_ * pi * std::sin(t);
    case 2:
        return 2 * c_ * pi * pi * std::cos(t);
    case 3:
        return -4 * c_ * pi * pi * pi * std::sin(t);
    case 4:
        return -8 * c_ * pi * pi * pi * pi * std::cos(t);
    default:
        throw std::invalid_argument("derivative order must be 0..4");
    }
}

double SinSquaredCrop::derivative_bound(int j) const
{
    if (j < 0 || j > 4) {
        throw std::invalid_argument("derivative order must be 0..4");
    }
    if (j == 0) {
        return c_;
    }
    return c_ * std::pow(2.0, j - 1) * std::pow(pi, j);
}

double SharpCrop::derivative(int j, double u) const
{
    if (j != 0) {
        throw std::domain_error("SharpCrop has no derivatives");
    }
    return (u > 1 && u <= 2) ? 1.0 : 0.0;
}

double SharpCrop::derivative_bound(int j) const
{
    if (j != 0) {
        throw std::domain_error("SharpCrop has no derivatives");
    }
    return 1;
}

double SharpCrop::total_variation(double a, double b) const
{
    // Jumps of size 1 at u = 1 and u = 2.
    double v = 0;
    if (a <= 1 && 1 <= b) {
        v += 1;
    }
    if (a <= 2 && 2 <= b) {
        v += 1;
    }
    return v;
}

double SharpCrop::first_moment_abs_derivative() const
{
    return 1 + 2;
}

ComplexQuadResult SharpCrop::mellin(std::complex<double> s) const
{
    if (std::abs(s) < 1e-300) {
        return {std::log(2.0), 0};
    }
    return {(std::pow(2.0, s) - 1.0) / s, 0};
}

namespace
{

// Truncated Taylor arithmetic: x[k] = f^(k)(u) / k!.
constexpr int jet_order = 6;
using Taylor = std::array<double, jet_order>;

Taylor trecip(const Taylor &a)
{
    Taylor c{};
    c[0] = 1 / a[0];
    for (int k = 1; k < jet_order; ++k) {
        double s = 0;
        for (int j = 1; j <= k; ++j) {
            s += a[j] * c[k - j];
        }
        c[k] = -s / a[0];
    }
    return c;
}

Taylor texp(const Taylor &a)
{
    // e' = a' e.
    Taylor c{};
    c[0] = std::exp(a[0]);
    for (int k = 1; k < jet_order; ++k) {
        double s = 0;
        for (int j = 1; j <= k; ++j) {
            s += j * a[j] * c[k - j];
        }
        c[k] = s / k;
    }
    return c;
}

} // namespace

std::array<double, 6> BumpCrop::jet(double u)
{
    std::array<double, 6> d{};
    if (u <= 1 || u >= 2) {
        return d;
    }
    const double t = u - 1;
    Taylor tt{}, ss{};
    tt[0] = t;
    tt[1] = 1;
    ss[0] = 1 - t;
    ss[1] = -1;
    auto g = trecip(tt);
    const auto h = trecip(ss);
    for (int k = 0; k < jet_order; ++k) {
        g[k] = -(g[k] + h[k]);
    }
    const auto e = texp(g);
    double fact = 1;
    for (int k = 0; k < 6; ++k) {
        if (k > 0) {
            fact *= k;
        }
        d[k] = e[k] * fact;
    }
    return d;
}

BumpCrop::BumpCrop()
{
    constexpr int n = 20000;
    const double hstep = 1.0 / n;
    std::array<double, 6> mx{};
    for (int i = 0; i <= n; ++i) {
        const auto d = jet(1 + i * hstep);
        for (int k = 0; k < 6; ++k) {
            mx[k] = std::max(mx[k], std::abs(d[k]));
        }
    }
    // Between grid points |f^(j)| exceeds the sampled max by at most
    // (h/2) max|f^(j+1)|; the top level uses a coarse doubling of the sampled
    // fifth derivative as its own padding.
    std::array<double, 6> bnd{};
    bnd[5] = 2 * mx[5];
    for (int k = 4; k >= 0; --k) {
        bnd[k] = mx[k] + 0.5 * hstep * bnd[k + 1];
    }
    double worst = 0;
    for (int k = 0; k <= 4; ++k) {
        worst = std::max(worst, bnd[k]);
    }
    c_ = 1 / worst;
    for (int k = 0; k <= 4; ++k) {
        bounds_[k] = c_ * bnd[k];
    }
    fhat0_ = integrate([this](double u) { return derivative(0, u); }, 1, 2, 1e-14).value;
}

double BumpCrop::derivative(int j, double u) const
{
    if (j < 0 || j > 4) {
        throw std::invalid_argument("derivative order must be 0..4");
    }
    return c_ * jet(u)[j];
}

double BumpCrop::derivative_bound(int j) const
{
    if (j < 0 || j > 4) {
        throw std::invalid_argument("derivative order must be 0..4");
    }
    return bounds_[j];
}

std::shared_ptr<const CropFunction> make_crop(const std::string &name)
{
    if (name == "sin2") {
        return std::make_shared<SinSquaredCrop>();
    }
    if (name == "sharp") {
        return std::make_shared<SharpCrop>();
    }
    if (name == "bump") {
        return std::make_shared<BumpCrop>();
    }
    throw std::invalid_argument("unknown crop '" + name + "' (expected sin2, sharp or bump)");
}

HWeight::HWeight(std::shared_ptr<const CropFunction> f, double lambda) : f_(std::move(f)), lambda_(lambda)
{
    if (!(lambda > 1)) {
        throw std::invalid_argument("derive_h: lambda must exceed 1");
    }
    if (!f_) {
        throw std::invalid_argument("derive_h: null crop");
    }
}

double HWeight::support_lo() const
{
    return 1 / (lambda_ * lambda_);
}

double HWeight::operator()(double u) const
{
    if (u <= 0) {
        return 0;
    }
    return f_->total_variation(u, lambda_ * lambda_ * u);
}

QuadResult HWeight::by_quadrature(double u) const
{
    if (f_->is_sharp()) {
        return {(*this)(u), 0};
    }
    const double lo = std::max(1.0, u), hi = std::min(2.0, lambda_ * lambda_ * u);
    if (u <= 0 || lo >= hi) {
        return {};
    }
    // u int_1^{lambda^2} |f'(ut)| dt, split at the mode where f' changes sign.
    auto g = [this, u](double t) { return u * std::abs(f_->derivative(1, u * t)); };
    const double tm = f_->mode() / u;
    const double t0 = lo / u, t1 = hi / u;
    if (tm > t0 && tm < t1) {
        const auto a = integrate(g, t0, tm);
        const auto b = integrate(g, tm, t1);
        return {a.value + b.value, a.error + b.error};
    }
    return integrate(g, t0, t1);
}

QuadResult HWeight::hhat0() const
{
    // h is piecewise smooth with kinks where u or lambda^2 u crosses 1, mode, 2.
    const double l2 = lambda_ * lambda_;
    const double m = f_->mode();
    std::vector<double> cuts{1 / l2, m / l2, 2 / l2, 1, m, 2};
    for (auto &c : cuts) {
        c = std::clamp(c, support_lo(), 2.0);
    }
    std::sort(cuts.begin(), cuts.end());
    QuadResult out;
    auto h = [this](double u) { return (*this)(u); };
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const auto r = integrate(h, cuts[i], cuts[i + 1], 1e-13);
        out.value += r.value;
        out.error += r.error;
    }
    return out;
}

double HWeight::hhat0_closed_form() const
{
    return (1 - 1 / (lambda_ * lambda_)) * f_->first_moment_abs_derivative();
}

HWeight derive_h(std::shared_ptr<const CropFunction> f, double lambda)
{
    return HWeight(std::move(f), lambda);
}

} // namespace linnik

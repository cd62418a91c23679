#ifndef LINNIK_CROP_HPP
#define LINNIK_CROP_HPP

#include <array>
#include <complex>
#include <functional>
#include <memory>
#include <string>

namespace linnik
{

struct QuadResult {
    double value = 0;
    double error = 0;
};

struct ComplexQuadResult {
    std::complex<double> value;
    double error = 0;
};

// Adaptive Gauss-Kronrod on [a, b] with relative tolerance tol.
QuadResult integrate(const std::function<double(double)> &f, double a, double b, double tol = 1e-12);

// Complex integrand on [a, b], split into `panels` equal pieces; real and
// imaginary parts are integrated separately.
ComplexQuadResult integrate_complex(const std::function<std::complex<double>(double)> &f, double a, double b,
                                    int panels = 1, double tol = 1e-12);

// A nonnegative weight supported on [1, 2].
class CropFunction
{
public:
    virtual ~CropFunction() = default;

    virtual std::string name() const = 0;
    // j-th derivative, 0 <= j <= 4. Zero outside [1, 2].
    virtual double derivative(int j, double u) const = 0;
    // Certified upper bound for max |f^(j)| on [1, 2].
    virtual double derivative_bound(int j) const = 0;
    virtual double fhat0() const = 0;
    // Point where f attains its maximum; f is increasing before it and
    // decreasing after.
    virtual double mode() const = 0;
    // True when f is only a step (no derivatives).
    virtual bool is_sharp() const
    {
        return false;
    }

    double operator()(double u) const
    {
        return derivative(0, u);
    }

    // int_a^b |f'(v)| dv, exact from unimodality.
    virtual double total_variation(double a, double b) const;
    // int v |f'(v)| dv over the support.
    virtual double first_moment_abs_derivative() const;

    // f~(s) = int f(y) y^(s-1) dy.
    virtual ComplexQuadResult mellin(std::complex<double> s) const;
};

// f(u) = c sin^2(pi (u - 1)) on [1, 2].
class SinSquaredCrop : public CropFunction
{
public:
    // c defaults to 1 / (8 pi^4), which makes |f''''| <= 1.
    explicit SinSquaredCrop(double c = default_scale());
    static double default_scale();

    std::string name() const override
    {
        return "sin2";
    }
    double derivative(int j, double u) const override;
    double derivative_bound(int j) const override;
    double fhat0() const override
    {
        return c_ / 2;
    }
    double mode() const override
    {
        return 1.5;
    }
    double scale() const
    {
        return c_;
    }

private:
    double c_;
};

// Indicator of (1, 2]. Used for exact integer tests only.
class SharpCrop : public CropFunction
{
public:
    std::string name() const override
    {
        return "sharp";
    }
    double derivative(int j, double u) const override;
    double derivative_bound(int j) const override;
    double fhat0() const override
    {
        return 1;
    }
    double mode() const override
    {
        return 1.5;
    }
    bool is_sharp() const override
    {
        return true;
    }
    double total_variation(double a, double b) const override;
    double first_moment_abs_derivative() const override;
    // (2^s - 1) / s.
    ComplexQuadResult mellin(std::complex<double> s) const override;
};

// C-infinity bump c * exp(-1/t - 1/(1-t)), t = u - 1. The scale c is chosen
// so that the derivative bounds, which are sampled on a grid and padded by
// the next derivative's bound times the half spacing, are all <= 1.
class BumpCrop : public CropFunction
{
public:
    BumpCrop();

    std::string name() const override
    {
        return "bump";
    }
    double derivative(int j, double u) const override;
    double derivative_bound(int j) const override;
    double fhat0() const override
    {
        return fhat0_;
    }
    double mode() const override
    {
        return 1.5;
    }
    double scale() const
    {
        return c_;
    }

private:
    // Derivatives 0..5 of the unscaled bump.
    static std::array<double, 6> jet(double u);

    double c_ = 1;
    double fhat0_ = 0;
    std::array<double, 5> bounds_{};
};

std::shared_ptr<const CropFunction> make_crop(const std::string &name);

// h(u) = u int_1^{lambda^2} |f'(ut)| dt = int_u^{lambda^2 u} |f'(v)| dv.
class HWeight
{
public:
    HWeight(std::shared_ptr<const CropFunction> f, double lambda);

    double lambda() const
    {
        return lambda_;
    }
    // Exact via the variation of f.
    double operator()(double u) const;
    // Same value by adaptive quadrature of the defining integral.
    QuadResult by_quadrature(double u) const;
    double support_lo() const;
    double support_hi() const
    {
        return 2;
    }
    // int h(u) du by quadrature.
    QuadResult hhat0() const;
    // (1 - lambda^-2) int v |f'(v)| dv.
    double hhat0_closed_form() const;

private:
    std::shared_ptr<const CropFunction> f_;
    double lambda_;
};

// Throws std::invalid_argument for lambda <= 1.
HWeight derive_h(std::shared_ptr<const CropFunction> f, double lambda);

} // namespace linnik

#endif

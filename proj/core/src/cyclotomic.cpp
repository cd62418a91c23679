#include <linnik/cyclotomic.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace linnik
{

CyclotomicSum::CyclotomicSum(u64 m) : m_(m), coef_(m, 0)
{
    if (m == 0) {
        throw std::invalid_argument("CyclotomicSum: order must be positive");
    }
}

void CyclotomicSum::add(u64 k, std::int64_t c)
{
    coef_[k % m_] += c;
    reduced_ = false;
}

CyclotomicSum &CyclotomicSum::operator+=(const CyclotomicSum &other)
{
    if (other.m_ != m_) {
        throw std::invalid_argument("CyclotomicSum: order mismatch");
    }
    for (u64 k = 0; k < m_; ++k) {
        coef_[k] += other.coef_[k];
    }
    reduced_ = false;
    return *this;
}

CyclotomicSum CyclotomicSum::operator*(const CyclotomicSum &other) const
{
    if (other.m_ != m_) {
        throw std::invalid_argument("CyclotomicSum: order mismatch");
    }
    CyclotomicSum out(m_);
    for (u64 i = 0; i < m_; ++i) {
        if (coef_[i] == 0) {
            continue;
        }
        for (u64 j = 0; j < m_; ++j) {
            if (other.coef_[j] != 0) {
                out.coef_[(i + j) % m_] += coef_[i] * other.coef_[j];
            }
        }
    }
    return out;
}

CyclotomicSum CyclotomicSum::conj() const
{
    CyclotomicSum out(m_);
    for (u64 k = 0; k < m_; ++k) {
        out.coef_[(m_ - k) % m_] += coef_[k];
    }
    return out;
}

void CyclotomicSum::reduce()
{
    if (reduced_ || m_ == 1) {
        reduced_ = true;
        return;
    }
    // Z[zeta_m] = tensor product of Z[zeta_{p^e}] over p^e || m. The exponent k
    // maps to digits t_i = c_i * k mod p_i^{e_i}, c_i = (m / p_i^{e_i})^{-1}.
    const auto fac = factorize(m_);
    const std::size_t r = fac.size();
    std::vector<u64> pe(r), cinv(r), stride(r);
    u64 s = 1;
    for (std::size_t i = 0; i < r; ++i) {
        pe[i] = fac[i].value();
        cinv[i] = inverse_mod((m_ / pe[i]) % pe[i], pe[i]);
        stride[i] = s;
        s *= pe[i];
    }
    std::vector<u64> pos(m_);
    for (u64 k = 0; k < m_; ++k) {
        u64 idx = 0;
        for (std::size_t i = 0; i < r; ++i) {
            idx += mul_mod(cinv[i], k, pe[i]) * stride[i];
        }
        pos[k] = idx;
    }
    std::vector<std::int64_t> arr(m_, 0);
    for (u64 k = 0; k < m_; ++k) {
        arr[pos[k]] = coef_[k];
    }
    // In Z[zeta_{p^e}]: sum_{j<p} zeta^{t + j p^{e-1}} = 0, so every power whose
    // top base-p digit is p - 1 is rewritten through the other p - 1 powers.
    for (std::size_t i = 0; i < r; ++i) {
        const u64 p = fac[i].p;
        const u64 low = pe[i] / p;
        const u64 top = (p - 1) * low;
        for (u64 idx = 0; idx < m_; ++idx) {
            const u64 t = (idx / stride[i]) % pe[i];
            if (t < top || arr[idx] == 0) {
                continue;
            }
            const std::int64_t c = arr[idx];
            arr[idx] = 0;
            const u64 base = idx - t * stride[i];
            const u64 tl = t % low;
            for (u64 j = 0; j + 1 < p; ++j) {
                arr[base + (tl + j * low) * stride[i]] -= c;
            }
        }
    }
    for (u64 k = 0; k < m_; ++k) {
        coef_[k] = arr[pos[k]];
    }
    reduced_ = true;
}

bool CyclotomicSum::is_zero() const
{
    CyclotomicSum tmp = *this;
    tmp.reduce();
    for (auto c : tmp.coef_) {
        if (c != 0) {
            return false;
        }
    }
    return true;
}

std::optional<std::int64_t> CyclotomicSum::to_integer() const
{
    CyclotomicSum tmp = *this;
    tmp.reduce();
    for (u64 k = 1; k < m_; ++k) {
        if (tmp.coef_[k] != 0) {
            return std::nullopt;
        }
    }
    return tmp.coef_[0];
}

std::complex<double> CyclotomicSum::to_complex() const
{
    std::complex<double> z = 0;
    for (u64 k = 0; k < m_; ++k) {
        if (coef_[k] != 0) {
            const double th = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m_);
            z += static_cast<double>(coef_[k]) * std::complex<double>(std::cos(th), std::sin(th));
        }
    }
    return z;
}

} // namespace linnik

#ifndef LINNIK_ZEROS_HPP
#define LINNIK_ZEROS_HPP

#include <complex>
#include <cstdint>
#include <istream>
#include <string>
#include <vector>

namespace linnik
{

struct Zero {
    double beta = 0.5;
    double gamma = 0;
    unsigned multiplicity = 1;

    std::complex<double> rho() const
    {
        return {beta, gamma};
    }
};

enum class ZeroSource { synthetic, file };

class ZeroSet
{
public:
    ZeroSet() = default;
    // Throws std::invalid_argument if some beta lies outside [0, 1], some
    // multiplicity is zero or some |gamma| exceeds T.
    ZeroSet(std::vector<Zero> zeros, double T);

    // Text format: '#' comments, "conductor <q>", "character <label>", and
    // data lines "[beta] gamma" (beta defaults to 1/2). Positive ordinates
    // are mirrored to -gamma. Zeros with |gamma| > T are dropped; T < 0 keeps
    // all and sets T to the largest |gamma|.
    static ZeroSet parse(std::istream &in, double T = -1, const std::string &path = "");
    static ZeroSet load(const std::string &path, double T = -1);

    const std::vector<Zero> &zeros() const
    {
        return zeros_;
    }
    double T() const
    {
        return T_;
    }
    ZeroSource source() const
    {
        return source_;
    }
    const std::string &path() const
    {
        return path_;
    }
    std::uint64_t conductor() const
    {
        return conductor_;
    }
    const std::string &label() const
    {
        return label_;
    }
    // Count with multiplicity.
    std::uint64_t N() const;
    bool empty() const
    {
        return zeros_.empty();
    }
    double max_beta() const;
    // Same zeros restricted to |gamma| <= T.
    ZeroSet truncated(double T) const;
    // One entry per zero counted with multiplicity.
    std::vector<Zero> expanded() const;

private:
    std::vector<Zero> zeros_;
    double T_ = 0;
    ZeroSource source_ = ZeroSource::synthetic;
    std::string path_;
    std::uint64_t conductor_ = 0;
    std::string label_;
};

} // namespace linnik

#endif

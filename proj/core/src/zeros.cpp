#include <linnik/zeros.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace linnik
{

ZeroSet::ZeroSet(std::vector<Zero> zeros, double T) : zeros_(std::move(zeros)), T_(T)
{
    for (const auto &z : zeros_) {
        if (!(z.beta >= 0 && z.beta <= 1)) {
            throw std::invalid_argument("ZeroSet: beta outside [0, 1]");
        }
        if (z.multiplicity == 0) {
            throw std::invalid_argument("ZeroSet: multiplicity must be >= 1");
        }
        if (!(std::abs(z.gamma) <= T)) {
            throw std::invalid_argument("ZeroSet: |gamma| exceeds T");
        }
    }
}

ZeroSet ZeroSet::parse(std::istream &in, double T, const std::string &path)
{
    std::vector<Zero> raw;
    std::uint64_t conductor = 0;
    std::string label;
    std::string line;
    unsigned lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        std::istringstream ss(line);
        std::string head;
        ss >> head;
        if (head == "conductor") {
            if (!(ss >> conductor) || conductor == 0) {
                throw std::invalid_argument("zero file line " + std::to_string(lineno) + ": bad conductor");
            }
            continue;
        }
        if (head == "character") {
            if (!(ss >> label)) {
                throw std::invalid_argument("zero file line " + std::to_string(lineno) + ": missing label");
            }
            continue;
        }
        std::vector<double> nums;
        std::istringstream all(line);
        std::string tok;
        while (all >> tok) {
            std::size_t used = 0;
            double v = 0;
            try {
                v = std::stod(tok, &used);
            } catch (const std::exception &) {
                used = 0;
            }
            if (used != tok.size()) {
                throw std::invalid_argument("zero file line " + std::to_string(lineno) + ": bad number '" + tok + "'");
            }
            nums.push_back(v);
        }
        if (nums.empty() || nums.size() > 2) {
            throw std::invalid_argument("zero file line " + std::to_string(lineno) + ": expected '[beta] gamma'");
        }
        Zero z;
        z.beta = nums.size() == 2 ? nums[0] : 0.5;
        z.gamma = nums.back();
        if (!(z.beta >= 0 && z.beta <= 1)) {
            throw std::invalid_argument("zero file line " + std::to_string(lineno) + ": beta outside [0, 1]");
        }
        raw.push_back(z);
        if (z.gamma > 0) {
            raw.push_back({z.beta, -z.gamma, 1});
        }
    }
    double height = T;
    if (T < 0) {
        height = 0;
        for (const auto &z : raw) {
            height = std::max(height, std::abs(z.gamma));
        }
    }
    std::vector<Zero> kept;
    for (const auto &z : raw) {
        if (std::abs(z.gamma) <= height) {
            kept.push_back(z);
        }
    }
    std::sort(kept.begin(), kept.end(), [](const Zero &a, const Zero &b) { return a.gamma < b.gamma; });
    ZeroSet out(std::move(kept), height);
    out.source_ = ZeroSource::file;
    out.path_ = path;
    out.conductor_ = conductor;
    out.label_ = label;
    return out;
}

ZeroSet ZeroSet::load(const std::string &path, double T)
{
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open zero file: " + path);
    }
    return parse(in, T, path);
}

std::uint64_t ZeroSet::N() const
{
    std::uint64_t n = 0;
    for (const auto &z : zeros_) {
        n += z.multiplicity;
    }
    return n;
}

double ZeroSet::max_beta() const
{
    if (zeros_.empty()) {
        throw std::domain_error("max_beta: empty zero set");
    }
    double b = 0;
    for (const auto &z : zeros_) {
        b = std::max(b, z.beta);
    }
    return b;
}

ZeroSet ZeroSet::truncated(double T) const
{
    ZeroSet out = *this;
    out.zeros_.clear();
    for (const auto &z : zeros_) {
        if (std::abs(z.gamma) <= T) {
            out.zeros_.push_back(z);
        }
    }
    out.T_ = T;
    return out;
}

std::vector<Zero> ZeroSet::expanded() const
{
    std::vector<Zero> out;
    for (const auto &z : zeros_) {
        for (unsigned k = 0; k < z.multiplicity; ++k) {
            out.push_back({z.beta, z.gamma, 1});
        }
    }
    return out;
}

} // namespace linnik

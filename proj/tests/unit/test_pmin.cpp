#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <numeric>

#include <linnik/pmin.hpp>

#include "gen.hpp"

using namespace linnik;

namespace
{

// Least prime in the class by trial division.
u64 slow_pmin(u64 q, u64 a)
{
    for (u64 p = a % q;; p += q) {
        if (gen::slow_is_prime(p)) {
            return p;
        }
    }
}

std::filesystem::path scratch(const std::string &name)
{
    const auto dir = std::filesystem::temp_directory_path() / "linnik_test_pmin";
    std::filesystem::create_directories(dir);
    const auto p = dir / name;
    std::filesystem::remove(p);
    return p;
}

} // namespace

TEST_CASE("least primes")
{
    CHECK(p_min(7, 3) == 3);
    CHECK(p_min(13, 1) == 53);
    CHECK(p_min(10, 9) == 19);
    CHECK(p_min(2, 1) == 3);
    CHECK(p_min(5, 7) == 2);
    CHECK_THROWS_AS(p_min(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(p_min(10, 5), std::invalid_argument);
}

TEST_CASE("property: least primes match trial division")
{
    gen::Gen g(91);
    for (int trial = 0; trial < 500; ++trial) {
        const u64 q = g.uniform(2, 5000);
        const u64 a = g.unit(q);
        INFO("q=" << q << " a=" << a);
        CHECK(p_min(q, a) == slow_pmin(q, a));
    }
}

TEST_CASE("records")
{
    const auto r3 = pmin_record(3);
    CHECK(to_csv(r3).rfind("3,1,7,", 0) == 0);
    CHECK(r3.exponent == doctest::Approx(std::log(7.0) / std::log(3.0)));
    CHECK(pmin_record(4).p_max == 5);
    CHECK(pmin_record(100).rh_bound == doctest::Approx(std::pow(100 * std::log(100.0), 2)));
    CHECK(pmin_record(100).rh_bound == doctest::Approx(212076).epsilon(1e-5));
    CHECK_THROWS_AS(pmin_record(1), std::invalid_argument);
    CHECK(pmin_csv_header() == "q,a_worst,p_max,exponent,rh_bound");
    CHECK(to_json(r3).find("\"p_max\":7") != std::string::npos);
}

TEST_CASE("survey matches per-modulus records")
{
    SurveyOptions opt;
    opt.q_lo = 3;
    opt.q_hi = 400;
    opt.block = 37;
    std::vector<u64> seen;
    const auto res = survey(opt, [&](const PminRecord &r) { seen.push_back(r.q); });
    REQUIRE(res.records.size() == 398);
    CHECK(res.ok());
    CHECK(res.rh_violations.empty());
    CHECK(seen.size() == 398);
    CHECK(std::is_sorted(seen.begin(), seen.end()));
    for (const auto &r : res.records) {
        const auto want = pmin_record(r.q);
        INFO("q=" << r.q);
        CHECK(r.p_max == want.p_max);
        CHECK(r.a_worst == want.a_worst);
        CHECK(r.exponent == doctest::Approx(want.exponent));
    }
}

TEST_CASE("threads do not change results")
{
    SurveyOptions opt;
    opt.q_lo = 3;
    opt.q_hi = 2000;
    const auto one = survey(opt);
    opt.threads = 3;
    opt.block = 100;
    const auto three = survey(opt);
    REQUIRE(one.records.size() == three.records.size());
    for (std::size_t i = 0; i < one.records.size(); ++i) {
        CHECK(to_csv(one.records[i]) == to_csv(three.records[i]));
    }
}

TEST_CASE("survey options")
{
    SurveyOptions opt;
    opt.q_lo = 1;
    CHECK_THROWS_AS(survey(opt), std::invalid_argument);
    opt.q_lo = 50;
    opt.q_hi = 40;
    CHECK_THROWS_AS(survey(opt), std::invalid_argument);
    opt.q_lo = 2;
    opt.q_hi = 2;
    const auto two = survey(opt);
    CHECK(two.rh_violations == std::vector<u64>{2}); // p = 3 exceeds (2 log 2)^2
    CHECK_FALSE(two.ok());
    opt.strict_rh = false;
    CHECK(survey(opt).ok());
}

TEST_CASE("checkpoint round trip and resume")
{
    const auto path = scratch("ck.txt");
    CHECK_FALSE(read_checkpoint(path).has_value());
    write_checkpoint(path, 123);
    CHECK(read_checkpoint(path) == 123u);
    {
        std::ifstream in(path);
        std::string s((std::istreambuf_iterator<char>(in)), {});
        CHECK(s == "last_q=123\n");
    }
    for (const char *bad : {"last_q=\n", "q=4\n", "last_q=abc\n", ""}) {
        std::ofstream(path, std::ios::trunc) << bad;
        INFO(bad);
        CHECK_THROWS_AS(read_checkpoint(path), std::runtime_error);
    }

    std::filesystem::remove(path);
    SurveyOptions opt;
    opt.q_lo = 3;
    opt.q_hi = 300;
    opt.block = 50;
    const auto fresh = survey(opt);
    opt.checkpoint = path;
    opt.q_hi = 120;
    const auto first = survey(opt);
    CHECK(first.resumed_after == 0);
    CHECK(read_checkpoint(path) == 120u);
    opt.q_hi = 300;
    const auto rest = survey(opt);
    CHECK(rest.resumed_after == 120);
    REQUIRE(first.records.size() + rest.records.size() == fresh.records.size());
    for (std::size_t i = 0; i < fresh.records.size(); ++i) {
        const auto &r = i < first.records.size() ? first.records[i] : rest.records[i - first.records.size()];
        CHECK(to_csv(r) == to_csv(fresh.records[i]));
    }
    CHECK(read_checkpoint(path) == 300u);
    CHECK(survey(opt).records.empty());
    CHECK_FALSE(std::filesystem::exists(path.string() + ".tmp"));
}

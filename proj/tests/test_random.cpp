#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "linsep/random.hpp"

using namespace linsep;

TEST_CASE("identical seed and stream give identical sequences")
{
    RandomStream a(42, 7), b(42, 7);
    RandomStream other(42, 8);
    for (int i = 0; i < 1000; ++i) {
        const auto x = a.next_u64();
        CHECK(x == b.next_u64());
    }
    // creating unrelated streams in between does not disturb a sequence
    RandomStream c(42, 7);
    std::vector<double> first;
    for (int i = 0; i < 50; ++i) first.push_back(c.normal());
    RandomStream d(42, 7);
    for (int s = 0; s < 10; ++s) RandomStream(42, s).uniform();
    for (int i = 0; i < 50; ++i) CHECK(d.normal() == first[i]);
}

TEST_CASE("different seeds and streams differ")
{
    RandomStream a(1, 0), b(2, 0), c(1, 1);
    int same_ab = 0, same_ac = 0;
    for (int i = 0; i < 100; ++i) {
        const auto x = a.next_u64(), y = b.next_u64(), z = c.next_u64();
        same_ab += x == y;
        same_ac += x == z;
    }
    CHECK(same_ab == 0);
    CHECK(same_ac == 0);
}

TEST_CASE("substreams are deterministic and distinct")
{
    RandomStream base(9, 0);
    std::set<std::uint64_t> idx;
    for (int i = 0; i < 1000; ++i) idx.insert(base.substream(i).stream_index());
    CHECK(idx.size() == 1000);
    CHECK(base.substream(5).next_u64() == base.substream(5).next_u64());
    CHECK(base.substream(5).seed() == 9);
}

TEST_CASE("uniform lies in the open interval with the right moments")
{
    RandomStream r(3);
    const int n = 200000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = r.uniform();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
        s += u;
        s2 += u * u;
    }
    const double mean = s / n, var = s2 / n - mean * mean;
    CHECK(std::fabs(mean - 0.5) <= 4 * std::sqrt(1.0 / 12 / n));
    CHECK(std::fabs(var - 1.0 / 12) <= 0.002);
}

TEST_CASE("normal moments")
{
    RandomStream r(4);
    const int n = 200000;
    double s = 0.0, s2 = 0.0, s4 = 0.0;
    int below = 0;
    for (int i = 0; i < n; ++i) {
        const double g = r.normal();
        s += g;
        s2 += g * g;
        s4 += g * g * g * g;
        below += g < 1.0;
    }
    CHECK(std::fabs(s / n) <= 4 / std::sqrt(n));
    CHECK(std::fabs(s2 / n - 1.0) <= 4 * std::sqrt(2.0 / n));
    CHECK(std::fabs(s4 / n - 3.0) <= 4 * std::sqrt(96.0 / n));
    const double p = 0.8413447460685429;
    CHECK(std::fabs(static_cast<double>(below) / n - p) <= 4 * std::sqrt(p * (1 - p) / n));
}

TEST_CASE("streams with different index are uncorrelated")
{
    RandomStream a(100, 0), b(100, 1);
    const int n = 100000;
    double sab = 0, sa = 0, sb = 0, saa = 0, sbb = 0;
    for (int i = 0; i < n; ++i) {
        const double x = a.normal(), y = b.normal();
        sab += x * y;
        sa += x;
        sb += y;
        saa += x * x;
        sbb += y * y;
    }
    const double cov = sab / n - sa / n * sb / n;
    const double corr = cov / std::sqrt((saa / n - sa * sa / n / n) * (sbb / n - sb * sb / n / n));
    CHECK(std::fabs(corr) < 0.01);
}

TEST_CASE("run_chunked is worker-count invariant")
{
    const RandomStream base(77);
    auto fn = [](RandomStream& rs, std::uint64_t count) {
        double s = 0.0;
        for (std::uint64_t i = 0; i < count; ++i) s += rs.normal();
        return s;
    };
    auto merge = [](double& a, double b) { a += b; };
    const double one = run_chunked<double>(100003, 1, base, 0.0, fn, merge, 1000);
    for (unsigned w : {2u, 3u, 8u}) CHECK(run_chunked<double>(100003, w, base, 0.0, fn, merge, 1000) == one);

    // every draw is used exactly once
    auto count = run_chunked<std::uint64_t>(
        12345, 4, base, 0, [](RandomStream&, std::uint64_t c) { return c; },
        [](std::uint64_t& a, std::uint64_t b) { a += b; }, 100);
    CHECK(count == 12345);
}

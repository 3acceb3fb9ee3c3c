#include "kstab/az.hpp"
#include "kstab/catalog.hpp"
#include "kstab/invariants.hpp"
#include "kstab/scan.hpp"
#include "kstab/surface.hpp"
#include "kstab/verify.hpp"

#include <catch_amalgamated.hpp>

using namespace kstab;
using verify::q;

namespace {

Rat beta(const std::string& id, const std::vector<Rat>& x, const std::string& label,
         const std::map<std::string, long>& params = {}) {
    auto c = instantiate(id, params);
    for (const auto& t : c.tests)
        if (t.label == label) return beta_prime(c.pair(x), t.cls, t.label).beta_prime;
    throw std::runtime_error("no test divisor " + label);
}

const CenterSpec& center(const CatalogCase& c, const std::string& label) {
    for (const auto& z : c.centers)
        if (z.label == label) return z;
    throw std::runtime_error("no center " + label);
}

}  // namespace

TEST_CASE("beta' at frozen points", "[invariants]") {
    CHECK(beta("F4", {q(0, 1), q(0, 1)}, "D1") == Rat(27, 2));
    CHECK(beta("D5", {q(1, 2), q(1, 4)}, "F") == Rat(729, 128));
    CHECK(beta("E1", {q(1, 2), q(1, 2)}, "D2") == Rat(-635, 128));
    CHECK(beta("E1", {q(1, 2), q(1, 2)}, "D2").sign() < 0);
    // P3 with three hyperplanes is destabilized by any of them.
    CHECK(beta("F1", {q(1, 4), q(1, 4), q(1, 4)}, "D1").sign() < 0);
}

TEST_CASE("beta' agrees with the closed forms on interior nodes", "[invariants]") {
    for (long i = 1; i < 8; ++i)
        for (long j = 1; j < 8; ++j) {
            verify::Point x{q(i, 10), q(j, 10)};
            if (!is_log_fano(instantiate("F3").pair(x))) continue;
            CHECK(beta("F3", x, "D1") == verify::forms::f3_beta1(x));
            CHECK(beta("F3", x, "D2") == verify::forms::f3_beta2(x));
            CHECK(beta("D5", x, "D1") == verify::forms::d5_beta1(x));
            CHECK(beta("D5", x, "D2") == verify::forms::d5_beta2(x));
            CHECK(beta("D5", x, "F") == verify::forms::d5_betaF(x));
        }
}

TEST_CASE("report fields are consistent", "[invariants]") {
    auto c = instantiate("F4");
    auto p = c.pair({q(1, 4), q(1, 4)});
    auto r = beta_prime(p, c.boundary[0].cls, "D1");
    CHECK(r.A == Rat(3, 4));
    CHECK(r.beta_prime == r.A * r.L_cubed - r.S_prime);
    CHECK(r.verdict == Sign::positive);
    CHECK(log_discrepancy(p, "D2") == Rat(3, 4));
}

TEST_CASE("Abban-Zhuang estimates", "[az]") {
    SECTION("F3 and F4 match their closed forms") {
        auto f3 = instantiate("F3");
        auto f4 = instantiate("F4");
        for (long i = 1; i < 6; ++i)
            for (long j = 1; j < 6; ++j) {
                verify::Point x{q(i, 10), q(j, 10)};
                CHECK(S_W(f3.pair(x), f3.centers.front()) == verify::forms::f3_sw(x));
                CHECK(S_W(f4.pair(x), f4.centers.front()) == verify::forms::f4_sw(x));
            }
        CHECK(S_W(f3.pair({q(1, 2), q(1, 4)}), f3.centers.front()) == Rat(11, 16));
    }
    SECTION("Q1 m=1 at the origin") {
        auto c = instantiate("Q1", {{"m", 1}});
        auto p = c.pair({q(0, 1), q(0, 1)});
        CHECK(S_W(p, c.centers.front()) == Rat(9, 10));
        CHECK(delta_Z_bound(p, c.centers.front()).bound == Rat(10, 9));
        CHECK(polystable_verdict(p, c.tests, c.centers) == AzStatus::polystable_certified);
    }
    SECTION("D5 centers") {
        auto c = instantiate("D5");
        auto p = c.pair({q(1, 2), q(1, 4)});
        auto rep = S_W_report(p, center(c, "Z"));
        CHECK(rep.value == rep.negative_term + rep.volume_term);
        CHECK(rep.value.sign() > 0);
    }
    SECTION("cases without centers are refused") {
        auto c = instantiate("E1");
        CHECK_THROWS_AS(polystable_verdict(c.pair({q(1, 2), q(1, 2)}), c.tests, c.centers), DomainError);
    }
}

TEST_CASE("surface thresholds and the product rule", "[surface]") {
    for (long i = 1; i < 10; ++i) {
        Rat a = q(i, 10);
        CHECK((beta_prime_surface(p2_conic(a), "C").sign() > 0) == (a < Rat(3, 4)));
        CHECK((beta_prime_surface(quadric_surface_conic(a), "C").sign() > 0) == (a < Rat(1, 2)));
    }
    CHECK(beta_prime_surface(p2_conic(Rat(3, 4)), "C") == Rat(0));
    CHECK(beta_prime_surface(line_point(Rat(1, 3)), "P") == -Rat(1, 3) * (2 - Rat(1, 3)) / 2);
    CHECK(product_rule({Verdict::polystable, Verdict::polystable}) == Verdict::polystable);
    CHECK(product_rule({Verdict::polystable, Verdict::unstable}) == Verdict::unstable);
}

TEST_CASE("grid scans", "[scan]") {
    SECTION("F3 CSV at step 1/4") {
        auto s = scan(instantiate("F3"), q(1, 4), 1);
        auto csv = to_csv(s);
        CHECK(csv.rfind("a,b,status\n", 0) == 0);
        CHECK(csv.find("\n3/4,1/2,semistable_certified\n") != std::string::npos);
        CHECK(csv.find("\n0,1/4,unstable\n") != std::string::npos);
        CHECK(s.points.size() == 16);
    }
    SECTION("byte stable across runs and thread counts") {
        auto c = instantiate("D5");
        auto one = to_csv(scan(c, q(1, 10), 1));
        CHECK(one == to_csv(scan(c, q(1, 10), 1)));
        CHECK(one == to_csv(scan(c, q(1, 10), 3)));
        auto svg = to_svg(scan(c, q(1, 10), 2), regions::d5);
        CHECK(svg == to_svg(scan(c, q(1, 10), 1), regions::d5));
    }
    SECTION("three coefficients get a c column") {
        auto csv = to_csv(scan(instantiate("F1"), q(1, 4), 1));
        CHECK(csv.rfind("a,b,c,status\n", 0) == 0);
        CHECK(csv.find("semistable") == std::string::npos);
    }
    SECTION("SVG of an empty region still has axes") {
        auto svg = to_svg(scan(instantiate("E1"), q(1, 4), 1), [](const Rat&, const Rat&) { return false; });
        CHECK(svg.rfind("<?xml", 0) == 0);
        CHECK(svg.find("version=\"1.1\"") != std::string::npos);
        CHECK(svg.find(">a</text>") != std::string::npos);
        CHECK(svg.find(">b</text>") != std::string::npos);
        CHECK(svg.find("</svg>") != std::string::npos);
    }
    SECTION("grid values cover [0, 1)") {
        auto g = grid_values(q(1, 4));
        REQUIRE(g.size() == 4);
        CHECK(g.back() == Rat(3, 4));
    }
}

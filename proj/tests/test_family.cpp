#include <catch_amalgamated.hpp>

#include "fixtures.hpp"

using namespace totref;
using namespace fixtures;

TEST_CASE("gamma and eta as displayed") {
    auto a = xyz_xy();
    auto pair = xy_pair(a);
    REQUIRE(gamma(pair, el(a, "z")) == mat(a, {{"x", "z"}, {"0", "y"}}));
    REQUIRE(eta(pair, el(a, "z")) == mat(a, {{"y", "-z"}, {"0", "x"}}));
    REQUIRE(gamma(z9_pair(), el(z9(), "0")) == mat(z9(), {{"3", "0"}, {"0", "3"}}));
    auto g3 = gamma(pair, el(a, "z^3"));
    REQUIRE(g3.grading()->rows == std::vector<int>{0, 2});
    REQUIRE(g3.grading()->cols == std::vector<int>{1, 3});
    REQUIRE(g3.is_homogeneous());
    REQUIRE_FALSE(gamma(pair, el(a, "z + z^2")).grading().has_value());
}

TEST_CASE("gamma eta composites vanish") {
    auto a = xyz_xy();
    auto pair = xy_pair(a);
    for (const char* s : {"0", "1", "z", "z^2 + x*z", "2 + y", "x^3"}) {
        auto e = el(a, s);
        REQUIRE((gamma(pair, e) * eta(pair, e)).is_zero());
        REQUIRE((eta(pair, e) * gamma(pair, e)).is_zero());
    }
    auto zp = z9_pair();
    for (Int c = 0; c < 9; ++c) {
        auto e = Element::constant(z9(), c);
        REQUIRE((gamma(zp, e) * eta(zp, e)).is_zero());
    }
}

TEST_CASE("periodic complex exactness") {
    auto zp = z9_pair();
    REQUIRE(verify_complex(zp, el(z9(), "2"), 6).passed());
    REQUIRE(verify_complex(zp, el(z9(), "3"), 6).passed());
    auto a = xyz_xy();
    auto pair = xy_pair(a);
    auto rep = verify_complex(pair, el(a, "z^2"), 6, Scope{8});
    REQUIRE(rep.passed());
    REQUIRE(rep.scope == "per-degree D=8");
    REQUIRE(verify_complex(pair, el(a, "z + z^2"), 4, Scope{5}).verdict() != "fail");
}

TEST_CASE("total reflexivity") {
    auto zp = z9_pair();
    REQUIRE(verify_total_reflexivity(zp, el(z9(), "3"), 4).passed());
    REQUIRE(verify_total_reflexivity(zp, el(z9(), "1"), 2).passed());
    auto a = xyz_xy();
    auto pair = xy_pair(a);
    REQUIRE(verify_total_reflexivity(pair, el(a, "z"), 3, Scope{8}).passed());
    REQUIRE(verify_total_reflexivity(pair, el(a, "1"), 2, Scope{6}).passed());
}

TEST_CASE("G_a as the ideal (y, a)") {
    auto a = xyz_xy();
    auto pair = xy_pair(a);
    REQUIRE(verify_ideal_iso(pair, el(a, "z"), Scope{8}).passed());
    REQUIRE(verify_ideal_iso(pair, el(a, "1"), Scope{8}).passed());
    REQUIRE_THROWS_AS(verify_ideal_iso(pair, el(a, "y"), Scope{8}), PreconditionFailed);
}

TEST_CASE("decomposition for a in (x)") {
    auto a = xyz_xy();
    auto pair = xy_pair(a);
    auto rep = decompose_when_a_in_x(pair, el(a, "z"));
    REQUIRE(rep.passed());
    REQUIRE(decompose_when_a_in_x(pair, el(a, "0")).passed());
    REQUIRE(decompose_when_a_in_x(z9_pair(), el(z9(), "1")).passed());
}

TEST_CASE("swapping the pair") {
    auto a = xyz_xy();
    auto pair = xy_pair(a);
    auto s = swap_pair(pair);
    REQUIRE(s.verified);
    REQUIRE(s.x == pair.y);
    auto back = swap_pair(s);
    REQUIRE(back.x == pair.x);
    REQUIRE(back.y == pair.y);
    REQUIRE(verify_swap_witness(pair, el(a, "z")).passed());
    REQUIRE(verify_swap_witness(z9_pair(), el(z9(), "3")).passed());
}

TEST_CASE("mu of G_a detects units") {
    auto zp = z9_pair();
    for (Int c = 0; c < 9; ++c) {
        auto e = Element::constant(z9(), c);
        REQUIRE((minimal_generators(module_G(zp, e)) == 1) == is_unit(e));
        REQUIRE((minimal_generators(module_H(zp, e)) == 1) == is_unit(e));
    }
    auto a = xyz_xy();
    auto pair = xy_pair(a);
    for (const char* s : {"0", "1", "z", "3 + z", "x*z", "4"}) {
        auto e = el(a, s);
        REQUIRE((minimal_generators(module_G(pair, e)) == 1) == is_unit(e));
    }
}

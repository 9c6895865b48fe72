#include <catch_amalgamated.hpp>

#include <set>

#include "fixtures.hpp"

using namespace totref;
using namespace fixtures;

namespace {

// ideal generated by g in a finite ring, listed exhaustively
std::set<std::string> principal(const Element& g) {
    std::set<std::string> out;
    for (const auto& e : enumerate_carrier(g.ring())) out.insert((e * g).to_string());
    return out;
}

std::set<std::string> annihilator_set(const Element& g) {
    std::set<std::string> out;
    for (const auto& e : enumerate_carrier(g.ring()))
        if ((e * g).is_zero()) out.insert(e.to_string());
    return out;
}

}  // namespace

TEST_CASE("annihilator against enumeration") {
    auto r = z9();
    for (Int c = 0; c < 9; ++c) {
        auto e = Element::constant(r, c);
        auto ann = annihilator(e);
        std::set<std::string> span{"0"};
        for (const auto& g : ann) {
            REQUIRE((g * e).is_zero());
            for (const auto& s : principal(g)) span.insert(s);
        }
        REQUIRE(span == annihilator_set(e));
    }
    REQUIRE(annihilator(el(r, "3")).size() == 1);
    REQUIRE(annihilator(el(r, "1")).empty());
}

TEST_CASE("exact pairs") {
    auto zp = z9_pair();
    REQUIRE(zp.verified);
    auto p8 = verify_exact_pair(el(z8(), "2"), el(z8(), "4"));
    REQUIRE(p8.verified);
    REQUIRE(annihilator_set(el(z8(), "2")) == principal(el(z8(), "4")));
    REQUIRE(annihilator_set(el(z8(), "4")) == principal(el(z8(), "2")));
    auto a = xyz_xy();
    REQUIRE(xy_pair(a).verified);
    REQUIRE_THROWS_AS(verify_exact_pair(el(a, "1 + x"), el(a, "y")), UnitInput);
    REQUIRE_FALSE(verify_exact_pair(el(a, "x"), el(a, "z")).verified);
    REQUIRE_FALSE(verify_exact_pair(el(z8(), "2"), el(z8(), "2")).verified);
}

TEST_CASE("exactness is symmetric") {
    auto r = z8();
    for (Int c = 0; c < 8; ++c)
        for (Int d = 0; d < 8; ++d) {
            auto x = Element::constant(r, c), y = Element::constant(r, d);
            if (is_unit(x) || is_unit(y)) continue;
            REQUIRE(verify_exact_pair(x, y).verified == verify_exact_pair(y, x).verified);
        }
}

TEST_CASE("regular pairs") {
    auto zp = z9_pair();
    auto r = verify_regular_pair(zp);
    REQUIRE(r.verdict == Tri::No);
    REQUIRE_FALSE(r.x_regular_mod_y);
    REQUIRE_FALSE(r.intersection_zero);

    auto a = xyz_xy();
    auto pair = xy_pair(a);
    auto rx = verify_regular_pair(pair, Scope{6});
    REQUIRE(rx.verdict == Tri::Yes);
    REQUIRE(rx.x_regular_mod_y);
    REQUIRE(rx.y_regular_mod_x);
    REQUIRE(rx.intersection_zero);

    auto p8 = verify_exact_pair(el(z8(), "2"), el(z8(), "4"));
    REQUIRE(verify_regular_pair(p8).verdict == Tri::No);
}

TEST_CASE("no verified pair on a finite local ring is regular") {
    for (auto r : {z9(), z8(), Ring::finite(2, 4), Ring::finite(3, 1, {"t"}, {{4}})}) {
        auto carrier = enumerate_carrier(r);
        for (const auto& x : carrier)
            for (const auto& y : carrier) {
                if (is_unit(x) || is_unit(y)) continue;
                auto p = verify_exact_pair(x, y);
                if (!p.verified) continue;
                REQUIRE(verify_regular_pair(p).verdict == Tri::No);
            }
    }
}

TEST_CASE("weak regularity on quotients") {
    auto a = xyz_xy();
    REQUIRE(weakly_regular_on_quotient(el(a, "z"), {el(a, "x"), el(a, "y")}, Scope{8}));
    REQUIRE_FALSE(weakly_regular_on_quotient(el(a, "0"), {el(a, "x"), el(a, "y")}, Scope{8}));
    REQUIRE(weakly_regular_on_quotient(el(z9(), "2"), {el(z9(), "3")}));
    REQUIRE_FALSE(weakly_regular_on_quotient(el(z9(), "3"), {el(z9(), "3")}));
    // products of weakly regular elements stay weakly regular
    for (const char* s : {"z", "z^2", "3*z"})
        for (const char* t : {"z", "z^3"})
            REQUIRE(weakly_regular_on_quotient(el(a, s) * el(a, t), {el(a, "x"), el(a, "y")}, Scope{8}));
}

TEST_CASE("pairs from a factorization") {
    auto q = Ring::graded(5, {"x", "y", "z"});
    auto res = pair_from_factorization(q, el(q, "x"), el(q, "y"), Scope{6});
    REQUIRE(res.ring->describe() == "F5[x,y,z]/(x*y)");
    REQUIRE(res.pair.verified);
    REQUIRE(res.pair.regular == Tri::Yes);
    auto q2 = Ring::graded(5, {"x", "y"});
    auto res2 = pair_from_factorization(q2, el(q2, "x"), el(q2, "y"), Scope{6});
    REQUIRE(res2.pair.verified);
    REQUIRE(res2.pair.regular == Tri::Yes);
    REQUIRE_THROWS_AS(pair_from_factorization(q, el(q, "x + y"), el(q, "y")), UnsupportedQuotient);
}

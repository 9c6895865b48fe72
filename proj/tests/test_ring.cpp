#include <catch_amalgamated.hpp>

#include "generators.hpp"
#include "totref/parse.hpp"

using namespace totref;

namespace {

RingPtr xyz_xy() { return Ring::graded(5, {"x", "y", "z"}, {parse_monomial({"x", "y", "z"}, "x*y")}); }

}  // namespace

TEST_CASE("parsing reduces to normal form") {
    auto a = xyz_xy();
    REQUIRE(parse_element(a, "x*y + z^2") == parse_element(a, "z^2"));
    REQUIRE(parse_element(a, "x^2*y*z").is_zero());
    REQUIRE(parse_element(a, "(x+z)*(y+z)").to_string() == parse_element(a, "x*z + y*z + z^2").to_string());
    REQUIRE(parse_element(a, "-z").to_string() == "-z");
    REQUIRE(parse_element(a, "4*z") == parse_element(a, "-z"));

    auto z3sq = Ring::finite(3, 2);
    REQUIRE(parse_element(z3sq, "7 + 5") == Element::constant(z3sq, 3));
    REQUIRE(parse_element(z3sq, "3*3").is_zero());
}

TEST_CASE("parse errors") {
    auto a = xyz_xy();
    REQUIRE_THROWS_AS(parse_element(a, "w + 1"), UnknownVariable);
    REQUIRE_THROWS_AS(parse_element(a, "x +"), ParseError);
    REQUIRE_THROWS_AS(parse_element(a, "(x"), ParseError);
    REQUIRE_THROWS_AS(parse_element(a, "x^y"), ParseError);
    REQUIRE_THROWS_AS(parse_monomial({"x", "y"}, "x + y"), ParseError);
}

TEST_CASE("ring validation") {
    REQUIRE_THROWS_AS(Ring::finite(9, 1), InvalidRing);
    REQUIRE_THROWS_AS(Ring::finite(5, 1, {"x"}), InvalidRing);
    REQUIRE_THROWS_AS(Ring::graded(5, {"x"}, {{0}}), InvalidRing);
    REQUIRE_NOTHROW(Ring::finite(2, 3));
}

TEST_CASE("graded basis of F5[x,y,z]/(xy) has 2d+1 monomials") {
    auto a = xyz_xy();
    for (int d = 0; d <= 10; ++d) REQUIRE(a->graded_basis(d).size() == static_cast<std::size_t>(2 * d + 1));
    std::vector<std::string> deg2;
    for (const auto& m : a->graded_basis(2)) deg2.push_back(a->monomial_string(m));
    REQUIRE(deg2 == std::vector<std::string>{"x^2", "x*z", "y^2", "y*z", "z^2"});
    REQUIRE_THROWS_AS(a->carrier_basis(), WrongBackend);
}

TEST_CASE("carrier enumeration lists each element once") {
    auto z9 = Ring::finite(3, 2);
    REQUIRE(enumerate_carrier(z9).size() == 9);
    auto r = Ring::finite(2, 2, {"t"}, {{2}});
    auto all = enumerate_carrier(r);
    REQUIRE(all.size() == 16);
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) REQUIRE(all[i] != all[j]);
}

TEST_CASE("is_unit agrees with exhaustive search for an inverse") {
    for (auto r : {Ring::finite(3, 2), Ring::finite(2, 3), Ring::finite(2, 2, {"t"}, {{2}}), Ring::finite(3, 1, {"s", "t"}, {{2, 0}, {0, 2}})}) {
        auto all = enumerate_carrier(r);
        Element one = Element::constant(r, 1);
        for (const auto& e : all) {
            bool found = false;
            for (const auto& s : all) found = found || s * e == one;
            INFO(r->describe() << " " << e.to_string());
            REQUIRE(is_unit(e) == found);
            auto inv = try_inverse(e);
            REQUIRE(inv.has_value() == found);
            if (inv) REQUIRE(*inv * e == one);
        }
    }
}

TEST_CASE("ring axioms hold exhaustively on small carriers") {
    for (auto r : {Ring::finite(3, 2), Ring::finite(2, 3), Ring::finite(2, 2, {"t"}, {{2}})}) {
        auto all = enumerate_carrier(r);
        for (const auto& a : all)
            for (const auto& b : all) {
                REQUIRE(a * b == b * a);
                REQUIRE(a + b == b + a);
                for (const auto& c : all) {
                    REQUIRE((a * b) * c == a * (b * c));
                    REQUIRE(a * (b + c) == a * b + a * c);
                }
            }
    }
}

TEST_CASE("ring axioms on random graded triples") {
    auto a = xyz_xy();
    std::mt19937 rng(12345);
    for (int i = 0; i < 10000; ++i) {
        auto p = testgen::random_element(rng, a, 6);
        auto q = testgen::random_element(rng, a, 6);
        auto s = testgen::random_element(rng, a, 6);
        REQUIRE(p * q == q * p);
        REQUIRE((p * q) * s == p * (q * s));
        REQUIRE(p * (q + s) == p * q + p * s);
        REQUIRE(p - p == Element(a));
    }
}

TEST_CASE("printing then parsing is the identity") {
    std::mt19937 rng(7);
    auto a = xyz_xy();
    auto r = Ring::finite(3, 2, {"s", "t"}, {{2, 0}, {1, 1}, {0, 3}});
    for (int i = 0; i < 2000; ++i) {
        auto e = testgen::random_element(rng, a, 5);
        REQUIRE(parse_element(a, e.to_string()) == e);
        auto f = testgen::random_element(rng, r, 3);
        REQUIRE(parse_element(r, f.to_string()) == f);
    }
}

TEST_CASE("degrees and homogeneous parts") {
    auto a = xyz_xy();
    auto e = parse_element(a, "x + z^2 + 3");
    REQUIRE(e.degree() == 2);
    REQUIRE(e.low_degree() == 0);
    REQUIRE_FALSE(e.is_homogeneous());
    REQUIRE(e.homogeneous_part(2) == parse_element(a, "z^2"));
    REQUIRE(Element(a).degree() == -1);
}

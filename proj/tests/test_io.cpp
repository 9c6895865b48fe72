#include <catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "totref/io.hpp"

using namespace totref;
using namespace fixtures;

TEST_CASE("inline ring descriptors") {
    auto r = ring_from_string("Z/9");
    REQUIRE(r->is_finite());
    REQUIRE(r->p() == 3);
    REQUIRE(r->k() == 2);
    auto t = ring_from_string("Z/8[t]/(t^3)");
    REQUIRE(t->is_finite());
    REQUIRE(t->modulus() == 8);
    REQUIRE(t->carrier_basis().size() == 3);
    auto g = ring_from_string("F5[x,y,z]/(x*y)");
    REQUIRE(g->is_graded());
    REQUIRE(g->vars() == std::vector<std::string>{"x", "y", "z"});
    REQUIRE(parse_element(g, "x*y").is_zero());
    REQUIRE(ring_from_string(" F7[u] ")->is_graded());
}

TEST_CASE("bad descriptors") {
    REQUIRE_THROWS_AS(ring_from_string("Q[x]"), ParseError);
    REQUIRE_THROWS_AS(ring_from_string("Z/12"), InvalidRing);
    REQUIRE_THROWS_AS(ring_from_string("F4[x]"), InvalidRing);
    REQUIRE_THROWS_AS(ring_from_string("Z/1"), InvalidRing);
    REQUIRE_THROWS_AS(ring_from_json(Json{{"p", 3}}), ParseError);
    REQUIRE_THROWS_AS(ring_from_json(Json{{"kind", "local"}, {"p", 3}}), InvalidRing);
    REQUIRE_THROWS_AS(ring_from_json(Json{{"kind", "graded"}, {"p", 5}, {"k", 2}}), InvalidRing);
}

TEST_CASE("JSON descriptors round trip") {
    for (const char* text : {"Z/9", "Z/8[t]/(t^3)", "F5[x,y,z]/(x*y)", "F3[x,y]"}) {
        auto r = ring_from_string(text);
        auto back = ring_from_json(ring_to_json(r));
        REQUIRE(back->describe() == r->describe());
    }
    auto j = Json::parse(R"({"kind": "graded", "p": 5, "vars": ["x","y","z"], "relations": ["x*y"]})");
    REQUIRE(ring_from_json(j)->describe() == xyz_xy()->describe());
}

TEST_CASE("element lists and module specs") {
    auto a = xyz_xy();
    auto list = parse_element_list(a, "z, z^2 ,z");
    REQUIRE(list.size() == 3);
    REQUIRE(list[1] == el(a, "z^2"));
    auto pair = xy_pair(a);
    REQUIRE(parse_module_spec(pair, "G:z").presentation() == gamma(pair, el(a, "z")));
    REQUIRE(parse_module_spec(pair, "H:z^2").presentation() == eta(pair, el(a, "z^2")));
    REQUIRE_THROWS_AS(parse_module_spec(pair, "G_z"), ParseError);
    REQUIRE_THROWS_AS(parse_module_spec(pair, "K:z"), ParseError);
}

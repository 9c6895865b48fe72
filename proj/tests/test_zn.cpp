#include <catch_amalgamated.hpp>

#include <set>

#include "totref/zn.hpp"

using namespace totref::zn;

namespace {

// every vector of the given length over Z/n
std::vector<Row> all_vectors(std::size_t len, Int n) {
    std::vector<Row> out;
    Row v(len, 0);
    while (true) {
        out.push_back(v);
        std::size_t i = 0;
        for (; i < len; ++i) {
            if (++v[i] < n) break;
            v[i] = 0;
        }
        if (i == len) return out;
    }
}

Row apply(const std::vector<Row>& cols, std::size_t height, const Row& x, Int n) {
    Row out(height, 0);
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < height; ++i) out[i] = reduce(out[i] + mulmod(cols[j][i], x[j], n), n);
    return out;
}

void check_against_enumeration(Int n, Int p, std::size_t height, std::size_t unknowns) {
    auto xs = all_vectors(unknowns, n);
    auto bs = all_vectors(height, n);
    // every matrix with `unknowns` columns of the given height
    for (const auto& flat : all_vectors(height * unknowns, n)) {
        std::vector<Row> cols(unknowns, Row(height));
        for (std::size_t j = 0; j < unknowns; ++j)
            for (std::size_t i = 0; i < height; ++i) cols[j][i] = flat[j * height + i];
        ColumnSystem sys(cols, height, n);

        std::set<Row> image, kernel;
        for (const auto& x : xs) {
            Row b = apply(cols, height, x, n);
            image.insert(b);
            if (b == Row(height, 0)) kernel.insert(x);
        }
        for (const auto& b : bs) {
            auto x = sys.solve(b);
            REQUIRE(x.has_value() == (image.count(b) == 1));
            if (x) REQUIRE(apply(cols, height, *x, n) == b);
        }
        std::set<Row> ker_span, im_span;
        for_each_in_span(sys.kernel_basis(), unknowns, n, [&](const Row& v) { REQUIRE(ker_span.insert(v).second); });
        for_each_in_span(sys.image_basis(), height, n, [&](const Row& v) { REQUIRE(im_span.insert(v).second); });
        REQUIRE(ker_span == kernel);
        REQUIRE(im_span == image);
        Int card = 1;
        for (int i = 0; i < span_length(sys.kernel_basis(), n, p); ++i) card *= p;
        REQUIRE(card == static_cast<Int>(kernel.size()));
    }
}

}  // namespace

TEST_CASE("Howell solver agrees with enumeration over Z/9") {
    check_against_enumeration(9, 3, 1, 1);
    check_against_enumeration(9, 3, 1, 2);
    check_against_enumeration(9, 3, 2, 1);
    check_against_enumeration(9, 3, 2, 2);
}

TEST_CASE("Howell solver agrees with enumeration over Z/8") {
    check_against_enumeration(8, 2, 1, 2);
    check_against_enumeration(8, 2, 2, 1);
    check_against_enumeration(8, 2, 2, 2);
}

TEST_CASE("Howell solver agrees with enumeration over Z/27") {
    check_against_enumeration(27, 3, 1, 2);
    check_against_enumeration(27, 3, 2, 1);
}

TEST_CASE("gcd helpers") {
    REQUIRE(inverse(2, 9) == Int{5});
    REQUIRE_FALSE(inverse(3, 9).has_value());
    for (Int a = 1; a < 8; ++a) REQUIRE(mulmod(normalizing_unit(a, 8), a, 8) == gcd(a, 8));
    REQUIRE(log_index(9, 3, 3) == 1);
    REQUIRE(log_index(9, 1, 3) == 2);
}

TEST_CASE("reduce_mod_span gives canonical coset representatives") {
    std::vector<Row> gens{{3, 6}, {0, 3}};
    auto h = howell_form(gens, 2, 9);
    for (const auto& v : all_vectors(2, 9)) {
        Row r = reduce_mod_span(v, h, 9);
        for_each_in_span(h, 2, 9, [&](const Row& s) {
            Row w{reduce(v[0] + s[0], 9), reduce(v[1] + s[1], 9)};
            REQUIRE(reduce_mod_span(w, h, 9) == r);
        });
    }
}

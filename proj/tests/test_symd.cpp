#include "doctest.h"

#include <algorithm>
#include <set>

#include "tropjac/containment.hpp"
#include "tropjac/error.hpp"
#include "tropjac/suite.hpp"
#include "tropjac/symd.hpp"

using namespace tropjac;

namespace {

long binom(long n, long k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (long i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

} // namespace

TEST_CASE("sym cells enumerate edge multisets") {
    MetricGraph g = normalize(make_theta(Rat(1), Rat(1), Rat(1)));
    auto cells0 = sym_cells(g, 0);
    REQUIRE(cells0.size() == 1);
    CHECK(cells0[0].mult.empty());
    CHECK(cells0[0].degree() == 0);

    auto cells2 = sym_cells(g, 2);
    CHECK(cells2.size() == binom(3 + 2 - 1, 2));
    std::set<std::vector<std::pair<int, int>>> seen;
    for (const auto& c : cells2) {
        CHECK(c.degree() == 2);
        CHECK(std::is_sorted(c.mult.begin(), c.mult.end()));
        seen.insert(c.mult);
    }
    CHECK(seen.size() == cells2.size());

    Guards tight;
    tight.max_d = 2;
    CHECK_THROWS_AS(sym_cells(g, 3, tight), GuardExceeded);
}

TEST_CASE("cell parametrization matches edge velocities") {
    JacobianData jd = jacobian_data(make_theta(Rat(1), Rat(1), Rat(1)));
    SymCell c;
    c.mult = {{1, 2}}; // two points on edge e1
    AffineCellMap m = aj_on_cell(jd, c);
    REQUIRE(m.gens.size() == 1);
    CHECK(m.gens[0].first == jd.velocity[1]);
    CHECK(m.gens[0].second == 2 * jd.graph.edges[1].length);
    CHECK(m.base == vec_scale(jd.mu_vertex[jd.graph.edges[1].tail], Rat(2)));

    SymCell bad;
    bad.mult = {{99, 1}};
    CHECK_THROWS_AS(aj_on_cell(jd, bad), InvalidInput);
}

TEST_CASE("theta W1 is three segments with the frozen velocities") {
    JacobianData jd = jacobian_data(make_theta(Rat(1), Rat(1), Rat(1)));
    auto cells = wd_cells(jd, 1);
    REQUIRE(cells.size() == 3);

    std::set<Vec> dirs;
    for (const auto& c : cells) {
        CHECK(c.poly.dim == 1);
        REQUIRE(c.map.gens.size() == 1);
        dirs.insert(c.map.gens[0].first);
        // Canonical representative: lex-min vertex inside [0,1)^b.
        for (const Rat& x : c.poly.vertices.front()) {
            CHECK(x >= 0);
            CHECK(x < 1);
        }
    }
    std::set<Vec> expected = {{Rat(-1, 3), Rat(-1, 3)}, {Rat(2, 3), Rat(-1, 3)},
                              {Rat(-1, 3), Rat(2, 3)}};
    CHECK(dirs == expected);
}

TEST_CASE("bouquet W1 covers the two coordinate circles") {
    JacobianData jd = jacobian_data(make_bouquet({Rat(1), Rat(3, 2)}));
    auto cells = wd_cells(jd, 1);
    // Each loop is split in two by normalization: four half-loop segments.
    CHECK(cells.size() == 4);
    for (const auto& c : cells) {
        CHECK(c.poly.dim == 1);
        // Segments run along coordinate axes.
        Vec dir = c.map.gens[0].first;
        int nonzero = 0;
        for (const Rat& x : dir) nonzero += (x != 0);
        CHECK(nonzero == 1);
    }
    // Points on both circles and off them.
    std::vector<Polytope> cover;
    for (const auto& c : cells) cover.push_back(c.poly);
    auto pt = [](Rat x, Rat y) { return polytope_from_points(2, {{x, y}}); };
    CHECK(union_contains(cover, pt(Rat(1, 3), Rat(0))));
    CHECK(union_contains(cover, pt(Rat(0), Rat(7, 8))));
    CHECK_FALSE(union_contains(cover, pt(Rat(1, 3), Rat(1, 2))));
}

TEST_CASE("wd cells are deduplicated and canonical") {
    for (const auto& [name, graph] : suite_graphs()) {
        JacobianData jd = jacobian_data(graph);
        if (jd.b > 3) continue;
        for (int d = 1; d < jd.b; ++d) {
            auto cells = wd_cells(jd, d);
            std::set<std::string> keys;
            for (const auto& c : cells) {
                CHECK(c.source.degree() == d);
                keys.insert(polytope_key(c.poly));
            }
            CHECK(keys.size() == cells.size());
        }
    }
}

TEST_CASE("serial and parallel wd agree") {
    JacobianData jd = jacobian_data(make_k4({Rat(1), Rat(1), Rat(1), Rat(1), Rat(1), Rat(1)}));
    for (int d = 1; d <= 2; ++d) {
        auto a = wd_cells(jd, d);
        auto b = wd_cells_serial(jd, d);
        REQUIRE(a.size() == b.size());
        for (size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].source.mult == b[i].source.mult);
            CHECK(polytope_key(a[i].poly) == polytope_key(b[i].poly));
        }
    }
}

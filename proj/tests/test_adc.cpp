#include <random>

#include "doctest.h"
#include "graycat/catalog.hpp"
#include "graycat/nerve.hpp"
#include "oracles.hpp"

using namespace graycat;

namespace {

std::vector<Polygraph> complex_corpus() {
    const Polygraph I = interval_polygraph();
    return {globe(0),   globe(1),   globe(2),  globe(3),           sphere(1),
            sphere(2),  oriental(2), oriental(3), tensor_polygraph(I, I), suspend(oriental(2))};
}

DirComplex point_complex(const Id& v) {
    DirComplex c;
    c.add(v, 0);
    return c;
}

}  // namespace

TEST_CASE("globe complexes are valid and loop-free") {
    CHECK(validate_complex(globe(2).complex()).ok());
    CHECK(is_loopfree_unital(globe(3).complex()));
    CHECK(is_loopfree_unital(oriental(3).complex()));
    CHECK(validate_complex(DirComplex()).ok());
}

TEST_CASE("a boundary whose boundary is not zero is reported") {
    DirComplex c;
    c.add("x", 0);
    c.add("y", 0);
    c.add("f", 1, Chain::of(0, "x"), Chain::of(0, "y"));
    c.add("g", 1, Chain::of(0, "x"), Chain::of(0, "y"));
    c.add("s", 2, Chain::of(1, "f"), Chain::of(1, "f") + Chain::of(1, "g"));
    const Report r = validate_complex(c);
    REQUIRE_FALSE(r.ok());
    CHECK(r.issues[0].find("s") != std::string::npos);
}

TEST_CASE("a directed cycle is not loop-free") {
    DirComplex c;
    c.add("x", 0);
    c.add("y", 0);
    c.add("f", 1, Chain::of(0, "x"), Chain::of(0, "y"));
    c.add("g", 1, Chain::of(0, "y"), Chain::of(0, "x"));
    CHECK(validate_complex(c).ok());
    CHECK_FALSE(is_loopfree_unital(c));
}

TEST_CASE("atoms") {
    const Polygraph d1 = globe(1);
    const CellTable e1 = d1.atom("e1");
    CHECK(e1.n == 1);
    CHECK(e1.neg[0] == Chain::of(0, "e0-"));
    CHECK(e1.pos[0] == Chain::of(0, "e0+"));
    CHECK(e1.top() == Chain::of(1, "e1"));

    const CellTable pt = globe(0).atom("e0");
    CHECK(pt.n == 0);
    CHECK(pt == point_cell("e0"));

    const Polygraph o2 = oriental(2);
    const CellTable top = o2.atom("012");
    CHECK(top.neg[1] == Chain::of(1, "01") + Chain::of(1, "12"));
    CHECK(top.pos[1] == Chain::of(1, "02"));
}

TEST_CASE("sources, targets and identities") {
    const Polygraph d2 = globe(2);
    CHECK(cell_source(d2.atom("e2"), 1) == d2.atom("e1-"));
    CHECK(cell_target(d2.atom("e2"), 1) == d2.atom("e1+"));
    const CellTable x = d2.atom("e1-");
    CHECK(cell_target(identity(x), 1) == x);
    CHECK(cell_source(identity(x), 1) == x);

    const CellTable src = cell_source(oriental(2).atom("012"), 1);
    CHECK(src.top() == Chain::of(1, "01") + Chain::of(1, "12"));

    const CellTable a = point_cell("a");
    const CellTable ia = identity(a);
    CHECK(ia.n == 1);
    CHECK(ia.top().zero());
    const CellTable iia = identity(ia);
    CHECK(iia.neg[1].zero());
    CHECK(iia.top().zero());
    CHECK(is_identity_cell(ia));
}

TEST_CASE("composition") {
    const Polygraph o2 = oriental(2);
    const CellTable path = compose(o2.atom("01"), o2.atom("12"), 0);
    CHECK(path.top() == Chain::of(1, "01") + Chain::of(1, "12"));
    CHECK(path.neg[0] == Chain::of(0, "0"));
    CHECK(path.pos[0] == Chain::of(0, "2"));

    const CellTable x = o2.atom("012");
    CHECK(compose(x, pad_to(identity(cell_target(x, 1)), 2), 1) == x);
    CHECK(compose(x, pad_to(identity(cell_target(x, 0)), 2), 0) == x);

    // a path of three arrows
    DirComplex c;
    for (const char* v : {"p", "q", "r", "s"}) c.add(v, 0);
    c.add("f", 1, Chain::of(0, "p"), Chain::of(0, "q"));
    c.add("g", 1, Chain::of(0, "q"), Chain::of(0, "r"));
    c.add("h", 1, Chain::of(0, "r"), Chain::of(0, "s"));
    const Polygraph path3 = Polygraph::from_complex("path", c);
    const CellTable f = path3.atom("f"), g = path3.atom("g"), h = path3.atom("h");
    CHECK(compose(compose(f, g, 0), h, 0) == compose(f, compose(g, h, 0), 0));
    CHECK_FALSE(composable(f, h, 0));
    CHECK_THROWS_AS(compose(f, h, 0), std::invalid_argument);
}

TEST_CASE("cell equality") {
    const Polygraph sq = tensor_polygraph(globe(1), globe(1));
    CHECK(cell_eq(sq.atom("(e1*e1)"), sq.atom("(e1*e1)")));
    const Polygraph d2 = globe(2);
    CHECK_FALSE(cell_eq(d2.atom("e1-"), d2.atom("e1+")));
}

TEST_CASE("interchange on a 2x2 grid of 2-cells") {
    DirComplex c;
    for (const char* v : {"x", "y", "z"}) c.add(v, 0);
    for (const char* f : {"f1", "f2", "f3"}) c.add(f, 1, Chain::of(0, "x"), Chain::of(0, "y"));
    for (const char* g : {"g1", "g2", "g3"}) c.add(g, 1, Chain::of(0, "y"), Chain::of(0, "z"));
    c.add("a", 2, Chain::of(1, "f1"), Chain::of(1, "f2"));
    c.add("b", 2, Chain::of(1, "f2"), Chain::of(1, "f3"));
    c.add("c", 2, Chain::of(1, "g1"), Chain::of(1, "g2"));
    c.add("d", 2, Chain::of(1, "g2"), Chain::of(1, "g3"));
    const Polygraph grid = Polygraph::from_complex("grid", c);
    REQUIRE(grid.loop_free());
    const CellTable a = grid.atom("a"), b = grid.atom("b"), cc = grid.atom("c"), d = grid.atom("d");
    const CellTable rows = compose(compose(a, b, 1), compose(cc, d, 1), 0);
    const CellTable cols = compose(compose(a, cc, 0), compose(b, d, 0), 1);
    CHECK(rows == cols);
    CHECK(rows.top() == a.top() + b.top() + cc.top() + d.top());
    CHECK(cell_source(rows, 1).top() == Chain::of(1, "f1") + Chain::of(1, "g1"));
}

TEST_CASE("tensor, join and suspension of complexes") {
    CHECK(tensor_complex(globe(1).complex(), globe(1).complex()).counts() == std::vector<std::size_t>{4, 4, 1});
    CHECK(tensor_complex(globe(1).complex(), globe(2).complex()).counts() == std::vector<std::size_t>{4, 6, 4, 1});
    CHECK(find_isomorphism(tensor_polygraph(globe(0), oriental(2)), oriental(2)).has_value());

    const DirComplex j = join_complex(point_complex("x"), point_complex("y"));
    CHECK(j.counts() == std::vector<std::size_t>{2, 1});
    CHECK(find_isomorphism(Polygraph::from_complex("j", j), globe(1)).has_value());
    const DirComplex j3 = join_complex(j, point_complex("z"));
    CHECK(j3.counts() == std::vector<std::size_t>{3, 3, 1});
    CHECK(find_isomorphism(Polygraph::from_complex("j3", j3), oriental(2)).has_value());

    CHECK(find_isomorphism(Polygraph::from_complex("s", suspension_complex(globe(1).complex())), globe(2)).has_value());
}

TEST_CASE("property: tensor basis counts follow the product formula") {
    const auto corpus = complex_corpus();
    for (const auto& a : corpus)
        for (const auto& b : corpus) {
            const auto ca = a.counts(), cb = b.counts();
            const auto ct = tensor_complex(a.complex(), b.complex()).counts();
            for (std::size_t d = 0; d < ct.size(); ++d) {
                std::size_t expect = 0;
                for (std::size_t i = 0; i <= d; ++i)
                    if (i < ca.size() && d - i < cb.size()) expect += ca[i] * cb[d - i];
                CHECK(ct[d] == expect);
            }
        }
}

TEST_CASE("property: boundary of boundary vanishes after tensor, join and suspension") {
    const auto corpus = complex_corpus();
    int n = 0;
    for (const auto& a : corpus) {
        CHECK(validate_complex(suspension_complex(a.complex())).ok());
        for (const auto& b : corpus) {
            CHECK(validate_complex(tensor_complex(a.complex(), b.complex())).ok());
            // join needs disjoint ids
            const DirComplex rb = rename_complex(b.complex(), [](const Id& id) { return id + "'"; });
            CHECK(validate_complex(join_complex(a.complex(), rb)).ok());
            ++n;
        }
    }
    CHECK(n == 100);
}

TEST_CASE("property: atoms are valid cells of loop-free complexes") {
    for (const auto& p : complex_corpus()) {
        REQUIRE(is_loopfree_unital(p.complex()));
        for (const auto& g : p.generators()) CHECK(validate_cell(p.complex(), p.atom(g.id)).ok());
    }
}

TEST_CASE("property: globularity on every catalogued cell") {
    for (const auto& p : complex_corpus()) {
        const CellCatalog cat(p, 20000);
        for (const auto& x : cat.cells())
            for (int k = 0; k + 1 < x.n; ++k)
                for (int e1 = 0; e1 < 2; ++e1)
                    for (int e2 = 0; e2 < 2; ++e2) {
                        const CellTable inner = e1 ? cell_target(x, k + 1) : cell_source(x, k + 1);
                        const CellTable outer = e2 ? cell_target(inner, k) : cell_source(inner, k);
                        CHECK(outer == (e2 ? cell_target(x, k) : cell_source(x, k)));
                    }
    }
}

TEST_CASE("property: category axioms on random tuples") {
    std::mt19937_64 rng(7);
    const Polygraph I = interval_polygraph();
    for (const auto& p : {globe(4), tensor_polygraph(tensor_polygraph(I, I), I), oriental(4)}) {
        const CellCatalog cat(p, 50000);
        const auto st = oracle::sample_axioms(cat, 300, rng);
        CHECK(st.tuples == 300);
        CHECK(st.failures.empty());
    }
}

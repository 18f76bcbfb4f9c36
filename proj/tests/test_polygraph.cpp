#include <random>

#include "doctest.h"
#include "graycat/catalog.hpp"
#include "graycat/nerve.hpp"
#include "oracles.hpp"

using namespace graycat;

namespace {

bool iso(const Polygraph& a, const Polygraph& b) { return find_isomorphism(a, b).has_value(); }

Polygraph square() {
    const Polygraph I = interval_polygraph();
    return tensor_polygraph(I, I);
}

CellTable path(const Polygraph& p, const std::vector<Id>& ids) {
    CellTable x = p.atom(ids.front());
    for (std::size_t i = 1; i < ids.size(); ++i) x = compose(x, p.atom(ids[i]), 0);
    return x;
}

}  // namespace

TEST_CASE("globes and spheres") {
    CHECK(globe(0).counts() == std::vector<std::size_t>{1});
    CHECK(globe(2).counts() == std::vector<std::size_t>{2, 2, 1});
    CHECK(sphere(2).counts() == std::vector<std::size_t>{2, 2});
    CHECK(sphere(0).generators().empty());
    CHECK(globe(3).atom("e3").neg[2] == Chain::of(2, "e2-"));
    CHECK(check_morphism(sphere_inclusion(3)).ok());
    CHECK(is_polygraphic(sphere_inclusion(3)));
}

TEST_CASE("suspension") {
    CHECK(iso(suspend(globe(1)), globe(2)));
    CHECK(iso(suspend(sphere(1)), sphere(2)));
    CHECK(iso(suspend(point(), 3), globe(3)));
    const Polygraph two_points = suspend(empty_polygraph());
    CHECK(two_points.counts() == std::vector<std::size_t>{2});
    CHECK(iso(two_points, sphere(1)));
    const Polygraph so2 = suspend(oriental(2));
    CHECK(so2.counts() == std::vector<std::size_t>{2, 3, 3, 1});
    CHECK(so2.atom(suspension_id("012")).neg[0] == Chain::of(0, kSuspensionMinus));
}

TEST_CASE("generator support") {
    const Polygraph o2 = oriental(2);
    const CellTable x = o2.atom("012");
    CHECK(generator_support(x, 1) == std::set<Id>{"01", "12", "02"});
    CHECK(generator_support(x, 0) == std::set<Id>{"0", "2"});
    CHECK(generator_support(cell_source(x, 1), 1) == std::set<Id>{"01", "12"});
    CHECK(generator_support(identity(point_cell("0")), 1).empty());
}

TEST_CASE("morphisms") {
    const Polygraph d1 = globe(1), o2 = oriental(2);
    const PolyMorphism long_edge = make_morphism(d1, o2, {{"e0-", o2.atom("0")}, {"e0+", o2.atom("2")}, {"e1", o2.atom("02")}});
    CHECK(check_morphism(long_edge).ok());
    CHECK(is_polygraphic(long_edge));

    const PolyMorphism spine = make_morphism(d1, o2, {{"e0-", o2.atom("0")}, {"e0+", o2.atom("2")}, {"e1", path(o2, {"01", "12"})}});
    CHECK(check_morphism(spine).ok());
    CHECK_FALSE(is_polygraphic(spine));

    const PolyMorphism bad = make_morphism(d1, o2, {{"e0-", o2.atom("0")}, {"e0+", o2.atom("1")}, {"e1", o2.atom("02")}});
    const Report r = check_morphism(bad);
    REQUIRE_FALSE(r.ok());
    CHECK(r.issues[0].find("target mismatch") != std::string::npos);

    // a generator sent to an identity
    const PolyMorphism squash = make_morphism(d1, point(), {{"e0-", point_cell("e0")}, {"e0+", point_cell("e0")}, {"e1", point_cell("e0")}});
    CHECK(check_morphism(squash).ok());
    CHECK(is_identity_cell(squash.assignment.at("e1")));

    CHECK_THROWS_AS(make_morphism(d1, o2, {{"e0-", o2.atom("0")}}), std::invalid_argument);
    CHECK(same_morphism(compose_morphisms(identity_morphism(d1), spine), spine));
}

TEST_CASE("attaching the square's 2-cell to its 1-skeleton") {
    const Polygraph sq = square();
    const Polygraph skel = sub_polygraph(sq, {"(a0-*a0-)", "(a0-*a0+)", "(a0+*a0-)", "(a0+*a0+)", "(a0-*a)", "(a*a0-)",
                                              "(a0+*a)", "(a*a0+)"});
    CHECK(skel.counts() == std::vector<std::size_t>{4, 4});
    const auto sq_in = oracle::c1_square();
    const PolyMorphism bd = make_morphism(sphere(2), skel,
                                          {{"e0-", skel.atom("(a0-*a0-)")},
                                           {"e0+", skel.atom("(a0+*a0+)")},
                                           {"e1-", path(skel, sq_in.source_path)},
                                           {"e1+", path(skel, sq_in.target_path)}});
    REQUIRE(check_morphism(bd).ok());
    const Polygraph glued = pushout_attach(skel, {Attachment{"sq", bd}});
    CHECK(glued.counts() == std::vector<std::size_t>{4, 4, 1});
    CHECK(iso(glued, sq));

    // reversing the orientation only transposes the square
    const PolyMorphism flipped = make_morphism(sphere(2), skel,
                                               {{"e0-", skel.atom("(a0-*a0-)")},
                                                {"e0+", skel.atom("(a0+*a0+)")},
                                                {"e1-", path(skel, sq_in.target_path)},
                                                {"e1+", path(skel, sq_in.source_path)}});
    CHECK(iso(pushout_attach(skel, {Attachment{"sq", flipped}}), sq));
    const PolyMorphism endo = make_morphism(sphere(2), skel,
                                            {{"e0-", skel.atom("(a0-*a0-)")},
                                             {"e0+", skel.atom("(a0+*a0+)")},
                                             {"e1-", path(skel, sq_in.source_path)},
                                             {"e1+", path(skel, sq_in.source_path)}});
    CHECK_FALSE(iso(pushout_attach(skel, {Attachment{"sq", endo}}), sq));
}

TEST_CASE("attaching along an invalid boundary is refused") {
    const Polygraph o2 = oriental(2);
    PolyMorphism bd = make_morphism(sphere(1), o2, {{"e0-", o2.atom("0")}, {"e0+", o2.atom("1")}});
    bd.assignment["e0+"] = o2.atom("01");
    CHECK_THROWS_AS(pushout_attach(o2, {Attachment{"z", bd}}), std::invalid_argument);
}

TEST_CASE("collapsing a generator") {
    const auto [q, f] = collapse_generator(square(), "(a0-*a)");
    CHECK(q.counts() == std::vector<std::size_t>{3, 3, 1});
    CHECK(check_morphism(f).ok());
    CHECK(is_identity_cell(f.assignment.at("(a0-*a)")));
    // the square becomes a triangle-shaped 2-cell
    const CellTable top = f.assignment.at("(a*a)");
    CHECK(top.n == 2);
    CHECK(cell_source(top, 1).top() == Chain::of(1, "(a*a0+)"));

    const auto [pt, g] = collapse_generator(globe(1), "e1");
    CHECK(iso(pt, point()));
    CHECK(check_morphism(g).ok());

    CHECK_THROWS_AS(collapse_generator(globe(2), "e2"), std::invalid_argument);
    DirComplex loop;
    loop.add("x", 0);
    loop.add("l", 1, Chain::of(0, "x"), Chain::of(0, "x"));
    std::vector<Generator> gens{{"x", 0, {}, {}}, {"l", 1, point_cell("x"), point_cell("x")}};
    CHECK_THROWS_AS(collapse_generator(Polygraph::from_generators("loop", gens), "l"), std::invalid_argument);
}

TEST_CASE("coproducts") {
    const Polygraph c = coproduct({globe(1), oriental(2)});
    CHECK(c.counts() == std::vector<std::size_t>{5, 4, 1});
    CHECK(c.has(coproduct_id(0, "e1")));
    CHECK(c.has(coproduct_id(1, "012")));
    CHECK(coproduct({}).generators().empty());
    CHECK(iso(coproduct({point(), point()}), sphere(1)));
}

TEST_CASE("property: morphisms preserve composition and compose associatively") {
    // cofaces and degeneracies of orientals, composed in every valid order up to length 3
    std::vector<PolyMorphism> maps;
    for (int k = 1; k <= 3; ++k) {
        for (int i = 0; i <= k; ++i) maps.push_back(oriental_coface(k, i));
        for (int i = 0; i < k; ++i) maps.push_back(oriental_degeneracy(k, i));
    }
    for (const auto& f : maps) REQUIRE(check_morphism(f).ok());

    std::mt19937_64 rng(11);
    int chains = 0;
    for (const auto& f : maps)
        for (const auto& g : maps) {
            if (!same_complex(f.target.complex(), g.source.complex())) continue;
            const PolyMorphism gf = compose_morphisms(f, g);
            CHECK(check_morphism(gf).ok());
            const CellCatalog cat(f.source, 20000);
            for (const auto& x : cat.cells()) CHECK(apply(gf, x) == apply(g, apply(f, x)));
            // functoriality on composites
            for (int s = 0; s < 40; ++s) {
                const auto& cells = cat.cells();
                const CellTable& x = cells[rng() % cells.size()];
                const CellTable& y = cells[rng() % cells.size()];
                if (x.n != y.n) continue;
                for (int k = 0; k < x.n; ++k)
                    if (composable(x, y, k))
                        CHECK(apply(gf, compose(x, y, k)) == compose(apply(gf, x), apply(gf, y), k));
            }
            ++chains;
        }
    CHECK(chains > 10);
}

TEST_CASE("property: support of a composite is the union above the gluing level") {
    const Polygraph I = interval_polygraph();
    for (const auto& p : {oriental(3), tensor_polygraph(I, tensor_polygraph(I, I)), globe(3)}) {
        const CellCatalog cat(p, 20000);
        const auto& cells = cat.cells();
        int pairs = 0;
        for (const auto& x : cells)
            for (const auto& y : cells) {
                if (x.n != y.n || x.n == 0) continue;
                for (int k = 0; k < x.n; ++k) {
                    if (!composable(x, y, k)) continue;
                    const CellTable z = compose(x, y, k);
                    for (int d = k + 1; d <= x.n; ++d) {
                        std::set<Id> u = generator_support(x, d);
                        const auto v = generator_support(y, d);
                        u.insert(v.begin(), v.end());
                        CHECK(generator_support(z, d) == u);
                    }
                    ++pairs;
                }
                if (pairs > 3000) break;
            }
        CHECK(pairs > 0);
    }
}

TEST_CASE("property: attaching then removing recovers the base") {
    std::mt19937_64 rng(5);
    for (const auto& base : {oriental(2), oriental(3), square(), globe(2)}) {
        const CellCatalog cat(base, 20000);
        // attach a cell between each of several random parallel pairs
        std::vector<Attachment> cells;
        for (int t = 0; t < 200 && cells.size() < 4; ++t) {
            const CellTable& x = cat.cells()[rng() % cat.size()];
            const CellTable& y = cat.cells()[rng() % cat.size()];
            if (x.n != y.n) continue;
            if (x.n > 0 && (cell_source(x, x.n - 1) != cell_source(y, y.n - 1) || cell_target(x, x.n - 1) != cell_target(y, y.n - 1)))
                continue;
            const Polygraph sph = sphere(x.n + 1);
            std::map<Id, CellTable> im;
            for (int j = 0; j <= x.n; ++j) {
                im["e" + std::to_string(j) + "-"] = j == x.n ? x : cell_source(x, j);
                im["e" + std::to_string(j) + "+"] = j == x.n ? y : cell_target(x, j);
            }
            cells.push_back({"new" + std::to_string(cells.size()), make_morphism(sph, base, im)});
        }
        REQUIRE(cells.size() == 4);
        const Polygraph glued = pushout_attach(base, cells);
        std::set<Id> added;
        for (const auto& a : cells) added.insert(a.id);
        CHECK(glued.generators().size() == base.generators().size() + 4);
        CHECK(same_complex(remove_generators(glued, added).complex(), base.complex()));
    }
}

TEST_CASE("property: collapsing any non-loop 1-generator sends it to an identity") {
    const Polygraph I = interval_polygraph();
    for (const auto& p : {oriental(3), square(), tensor_polygraph(I, globe(2)), suspend(oriental(2))}) {
        for (const Id& g : p.ids_of_dim(1)) {
            const auto [q, f] = collapse_generator(p, g);
            CHECK(check_morphism(f).ok());
            CHECK(is_identity_cell(f.assignment.at(g)));
            CHECK(q.counts()[0] + 1 == p.counts()[0]);
            CHECK(q.counts()[1] + 1 == p.counts()[1]);
        }
    }
}

#include <random>

#include "corpus.hpp"
#include "doctest.h"
#include "graycat/catalog.hpp"
#include "graycat/nerve.hpp"

using namespace graycat;

namespace {

long long binomial(int n, int k) {
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::set<Id> generator_ids(const Polygraph& p) {
    std::set<Id> out;
    for (const auto& g : p.generators()) out.insert(g.id);
    return out;
}

bool marked_iso(const MarkedCat& a, const MarkedCat& b) {
    const auto ma = marked_generators(a), mb = marked_generators(b);
    return find_isomorphism(a.base, b.base, [&](const Id& x, const Id& y) { return ma.count(x) == mb.count(y); }).has_value();
}

StratSSet flat_regular(int n, const std::set<VertexSet>& simplices) {
    return regular_shape("sub", n, simplices, [](const VertexSet&) { return false; });
}

std::vector<StratSSet> shape_corpus() {
    return {simplex_shape(-1),         simplex_shape(0),       simplex_shape(1),       simplex_top_thin(1),
            simplex_top_thin(2),       complicial_simplex(2, 1), horn(2, 0),           horn(2, 1),
            complicial_prime(3, 1),    sharp_simplex(1)};
}

// Every morphism from oriental(k) into the free category, found by trying all images.
std::size_t brute_force_morphisms(const Polygraph& target, int k) {
    const Polygraph o = oriental(k);
    // identities above the target's dimension are possible images too
    const CellCatalog cat(target, 20000, std::max(k, target.max_dim()));
    const auto& gens = o.generators();
    std::size_t count = 0;
    std::map<Id, CellTable> im;
    std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i == gens.size()) {
            ++count;
            return;
        }
        const Generator& g = gens[i];
        for (const auto& x : cat.cells()) {
            if (x.n != g.dim) continue;
            if (g.dim > 0 && (apply_assignment(im, g.src) != cell_source(x, g.dim - 1) ||
                              apply_assignment(im, g.tgt) != cell_target(x, g.dim - 1)))
                continue;
            im[g.id] = x;
            go(i + 1);
        }
        im.erase(g.id);
    };
    go(0);
    return count;
}

}  // namespace

TEST_CASE("orientals") {
    CHECK(find_isomorphism(oriental(1), globe(1)).has_value());
    CHECK(oriental(2).counts() == std::vector<std::size_t>{3, 3, 1});
    CHECK(oriental(3).counts() == std::vector<std::size_t>{4, 6, 4, 1});
    CHECK(simplex_id({0, 2, 3}) == "023");
    const CellTable top = oriental(3).atom("0123");
    CHECK(top.neg[2] == Chain::of(2, "023") + Chain::of(2, "012"));
    CHECK(top.pos[2] == Chain::of(2, "123") + Chain::of(2, "013"));
    CHECK_THROWS_AS(oriental(-1), std::invalid_argument);
    for (int k = 1; k <= 3; ++k)
        for (int i = 0; i <= k; ++i) CHECK(check_morphism(oriental_coface(k, i)).ok());
}

TEST_CASE("simplex shapes and their thin sets") {
    CHECK(regular_thin(complicial_simplex(2, 1)) == std::set<VertexSet>{{0, 1, 2}});
    const auto eq = regular_thin(equivalence_simplex());
    CHECK(eq.count({0, 2}));
    CHECK(eq.count({1, 3}));
    CHECK_FALSE(eq.count({0, 1, 2}));
    CHECK(eq.count({0, 1, 2, 3}));
    CHECK_FALSE(eq.count({0, 1}));

    const StratSSet h = horn(2, 0);
    CHECK(regular_simplices(h) == std::set<VertexSet>{{0}, {1}, {2}, {0, 1}, {0, 2}});
    CHECK(regular_thin(h) == std::set<VertexSet>{{0, 1}});
    CHECK(regular_thin(horn(3, 1)) == std::set<VertexSet>{{0, 1, 2}});

    CHECK(regular_thin(simplex_top_thin(2)) == std::set<VertexSet>{{0, 1, 2}});
    CHECK(regular_thin(sharp_simplex(2)).size() == 4);
    CHECK(simplex_shape(-1).simplices.empty());
    CHECK_THROWS_AS(complicial_simplex(2, 3), std::invalid_argument);
    CHECK_THROWS_AS(complicial_prime(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(flat_regular(2, {{0, 1}}), std::invalid_argument);
}

TEST_CASE("joins of shapes") {
    CHECK(same_regular(join_strat(simplex_shape(0), simplex_shape(0)), simplex_shape(1)));
    CHECK(same_regular(join_strat(simplex_shape(0), simplex_top_thin(1)), complicial_simplex(2, 2)));
    for (const auto& s : shape_corpus()) {
        CHECK(same_regular(join_strat(s, simplex_shape(-1)), s));
        CHECK(same_regular(join_strat(simplex_shape(-1), s), s));
    }
    CHECK(same_regular(join_strat(join_strat(simplex_shape(-1), complicial_simplex(2, 1)), simplex_shape(0)),
                       complicial_simplex(3, 1)));
}

TEST_CASE("realization") {
    const MarkedCat r = realize_regular(complicial_simplex(2, 1));
    CHECK(marked_iso(r, MarkedCat{oriental(2), {kInf, {"012"}, {}}}));
    for (int n = 1; n <= 4; ++n) {
        const MarkedMap f = realize_inclusion(simplex_shape(n), simplex_top_thin(n));
        CHECK(marked_generators(f.target) == std::set<Id>{simplex_id([n] {
                  std::vector<int> v;
                  for (int i = 0; i <= n; ++i) v.push_back(i);
                  return v;
              }())});
        CHECK(check_marked_map(f).ok());
    }
    const MarkedMap h = realize_inclusion(horn(2, 0), complicial_simplex(2, 0));
    CHECK(h.source.base.counts() == std::vector<std::size_t>{3, 2});
    CHECK(check_marked_map(h).ok());
    // thinness must be preserved
    CHECK_THROWS_AS(realize_inclusion(simplex_top_thin(2), simplex_shape(2)), std::invalid_argument);
    // degenerate thin simplices contribute nothing: realizing a point gives a point
    CHECK(realize_regular(simplex_shape(0)).base.counts() == std::vector<std::size_t>{1});
}

TEST_CASE("nerves of free categories") {
    const Nerve d1 = street_nerve(flat(globe(1)), 3);
    CHECK(d1.nerve.counts() == std::vector<std::size_t>{2, 1, 0, 0});
    CHECK(d1.nerve.thin_count() == 0);
    CHECK(validate_strat(d1.nerve).ok());

    const Nerve marked = street_nerve(MarkedCat{globe(1), {kInf, {"e1"}, {}}}, 1);
    REQUIRE(marked.nerve.simplices[1].size() == 1);
    CHECK(marked.nerve.simplices[1][0].thin);

    const Nerve d2 = street_nerve(flat(globe(2)), 2);
    CHECK(d2.all[2].size() == brute_force_morphisms(globe(2), 2));
    CHECK(d2.all[1].size() == brute_force_morphisms(globe(2), 1));
    CHECK(validate_strat(d2.nerve).ok());

    CHECK_THROWS_AS(street_nerve(flat(globe(1)), -1), std::invalid_argument);
    CHECK_THROWS_AS(street_nerve(flat(oriental(3)), 3, 5), BudgetExceeded);
}

TEST_CASE("nerves of finite categories") {
    const Nerve iso = street_nerve(corpus::walking_iso(true, true), 2);
    CHECK(validate_strat(iso.nerve).ok());
    // both arrows and their composites with identities are thin
    CHECK(iso.nerve.simplices[1].size() == 2);
    for (const auto& s : iso.nerve.simplices[1]) CHECK(s.thin);
    const Nerve arrow = street_nerve(corpus::walking_arrow(false), 2);
    CHECK(arrow.nerve.counts() == std::vector<std::size_t>{2, 1, 0});
}

TEST_CASE("property: oriental sizes are binomial") {
    for (int n = 0; n <= 5; ++n) {
        const auto c = oriental(n).counts();
        for (int k = 0; k <= n; ++k) CHECK(static_cast<long long>(c[k]) == binomial(n + 1, k + 1));
    }
}

TEST_CASE("property: orientals are iterated joins of points") {
    Polygraph cur = empty_polygraph();
    for (int n = 0; n <= 4; ++n) {
        const Id v = std::string(1, static_cast<char>('p' + n));
        cur = join_polygraph(cur, Polygraph::from_generators(v, {{v, 0, {}, {}}}));
        CHECK(find_isomorphism(cur, oriental(n)).has_value());
    }
}

TEST_CASE("property: shape joins are associative and build the complicial simplices") {
    const auto corpus = shape_corpus();
    for (const auto& a : corpus)
        for (const auto& b : corpus)
            for (const auto& c : corpus) {
                if (a.ambient + b.ambient + c.ambient + 2 > 6) continue;
                const StratSSet l = join_strat(join_strat(a, b), c), r = join_strat(a, join_strat(b, c));
                CHECK(same_regular(l, r));
                CHECK(validate_strat(l).ok());
            }
    for (int n = 2; n <= 4; ++n)
        for (int k = 1; k < n; ++k) {
            const StratSSet j = join_strat(join_strat(simplex_shape(k - 2), complicial_simplex(2, 1)), simplex_shape(n - k - 2));
            CHECK(same_regular(j, complicial_simplex(n, k)));
        }
}

TEST_CASE("property: realization preserves unions and intersections") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 3);
        auto random_sub = [&] {
            std::set<VertexSet> gens;
            for (int t = 0; t < 3; ++t) {
                VertexSet v;
                for (int i = 0; i <= n; ++i)
                    if (rng() % 2) v.push_back(i);
                if (!v.empty()) gens.insert(v);
            }
            if (gens.empty()) gens.insert({0});
            return faces_closure(gens);
        };
        const auto a = random_sub(), b = random_sub();
        std::set<VertexSet> uni = a, inter;
        uni.insert(b.begin(), b.end());
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(inter, inter.end()));
        const auto ga = generator_ids(realize_regular(flat_regular(n, a)).base);
        const auto gb = generator_ids(realize_regular(flat_regular(n, b)).base);
        std::set<Id> gu = ga, gi;
        gu.insert(gb.begin(), gb.end());
        std::set_intersection(ga.begin(), ga.end(), gb.begin(), gb.end(), std::inserter(gi, gi.end()));
        CHECK(generator_ids(realize_regular(flat_regular(n, uni)).base) == gu);
        if (!inter.empty()) CHECK(generator_ids(realize_regular(flat_regular(n, inter)).base) == gi);
        CHECK(is_closed_subset(oriental(n), ga));
    }
}

TEST_CASE("property: nerve simplices match morphisms out of orientals") {
    const Polygraph I = interval_polygraph();
    for (const auto& p : {globe(1), globe(2), oriental(2), tensor_polygraph(I, I)}) {
        const Nerve nv = street_nerve(flat(p), 2);
        for (int k = 0; k <= 2; ++k) CHECK_MESSAGE(nv.all[k].size() == brute_force_morphisms(p, k), p.name << " k=" << k);
        CHECK(validate_strat(nv.nerve).ok());
    }
}

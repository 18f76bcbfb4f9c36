#include "corpus.hpp"
#include "doctest.h"
#include "graycat/nerve.hpp"

using namespace graycat;

namespace {

std::set<std::string> names_of(const FiniteCat& c, const std::set<int>& cells) {
    std::set<std::string> out;
    for (int i : cells) out.insert(c.names[i]);
    return out;
}

std::set<std::string> positive_identities(const FiniteCat& c) {
    std::set<std::string> out;
    for (int i = 0; i < c.size(); ++i)
        if (c.dim[i] >= 1 && c.is_identity(i)) out.insert(c.names[i]);
    return out;
}

std::set<std::vector<int>> functor_set(const FiniteCat& a, const FiniteCat& b) {
    const auto v = enumerate_functors(a, b, true);
    return {v.begin(), v.end()};
}

}  // namespace

TEST_CASE("inverses") {
    const FiniteCat iso = corpus::walking_iso(true, true);
    const int f = iso.find("f"), g = iso.find("g");
    const auto inv = find_inverse(iso, f);
    REQUIRE(inv.has_value());
    CHECK(inv->inverse == g);

    const int ida = iso.find("1(a)");
    const auto self = find_inverse(iso, ida);
    REQUIRE(self.has_value());
    CHECK(self->inverse == ida);

    const FiniteCat arrow = corpus::walking_arrow(false);
    CHECK_FALSE(find_inverse(arrow, arrow.find("f")).has_value());

    // with g unmarked an inverse exists, but not a marked one
    const FiniteCat half = corpus::walking_iso(true, false);
    CHECK(find_inverse(half, half.find("f")).has_value());
    CHECK_FALSE(find_inverse(half, half.find("f"), true).has_value());
}

TEST_CASE("prefibrancy") {
    for (const auto& c : {corpus::walking_arrow(false), corpus::chain3(), corpus::cyclic_group(2, false),
                          corpus::walking_iso(false, false), corpus::idempotent(false)})
        CHECK_MESSAGE(is_prefibrant(c).ok(), c.name);
    const Report half = is_prefibrant(corpus::walking_iso(true, false));
    REQUIRE_FALSE(half.ok());
    CHECK(half.issues[0].find("f") != std::string::npos);
    CHECK_FALSE(is_prefibrant(corpus::walking_arrow(true)).ok());
    CHECK(is_prefibrant(corpus::walking_iso(true, true)).ok());
}

TEST_CASE("coinductive invertibles") {
    const FiniteCat iso = corpus::walking_iso(false, false);
    auto expect = positive_identities(iso);
    expect.insert({"f", "g"});
    CHECK(names_of(iso, coinductive_invertibles(iso)) == expect);

    const FiniteCat arrow = corpus::walking_arrow(false);
    CHECK(names_of(arrow, coinductive_invertibles(arrow)) == positive_identities(arrow));

    // the 2-cells of the finite inverse quotient have no inverses, so f cannot be invertible
    const FiniteCat q = corpus::inverse_quotient(false);
    const auto ci = coinductive_invertibles(q);
    CHECK_FALSE(ci.count(q.find("f")));
    CHECK_FALSE(ci.count(q.find("1(a)=>fg")));
    // the only 2-cells point from the identities, so they cannot witness an inverse
    CHECK_FALSE(find_inverse(q, q.find("f")).has_value());

    // with two inverse 2-cells the arrow f' is invertible up to them
    const FiniteCat t = corpus::two_iso(false);
    const auto ct = coinductive_invertibles(t);
    CHECK(ct.count(t.find("al")));
    CHECK(ct.count(t.find("be")));
    CHECK_FALSE(ct.count(t.find("f")));
}

TEST_CASE("two-out-of-six") {
    CHECK(satisfies_2oo6(corpus::chain3()).ok());
    CHECK(satisfies_2oo6(corpus::walking_iso(true, true)).ok());
    // a flat iso: prefibrant, yet marked and invertible disagree
    const FiniteCat flat_iso = corpus::walking_iso(false, false);
    CHECK(is_prefibrant(flat_iso).ok());
    CHECK_FALSE(marked_iff_invertible(flat_iso).ok());
    CHECK_FALSE(satisfies_2oo6(flat_iso).ok());
    CHECK(marked_iff_invertible(corpus::walking_iso(true, true)).ok());
}

TEST_CASE("equivalences and isofibrations") {
    const FiniteCat iso = corpus::walking_iso(true, true);
    CHECK(is_equivalence(iso, iso, identity_functor(iso)).ok());
    CHECK(is_isofibration(iso, iso, identity_functor(iso)).ok());

    const FiniteCat pt = corpus::point_cat(iso.bound);
    const auto to_point = enumerate_functors(iso, pt);
    REQUIRE(to_point.size() == 1);
    CHECK(is_equivalence(iso, pt, to_point[0]).ok());
    CHECK(is_isofibration(iso, pt, to_point[0]).ok());

    const FiniteCat arrow = corpus::walking_arrow(false);
    const FiniteCat pt1 = corpus::point_cat(arrow.bound);
    const auto squash = enumerate_functors(arrow, pt1, false);
    REQUIRE(squash.size() == 1);
    const Report r = is_equivalence(arrow, pt1, squash[0]);
    REQUIRE_FALSE(r.ok());
    CHECK(r.issues[0].find("condition 1") != std::string::npos);
    // marking-preserving functors only
    CHECK(enumerate_functors(arrow, pt1, true).size() == 1);

    // the inclusion of one object into a flat iso is not essentially surjective on markings
    const FiniteCat flat_iso = corpus::walking_iso(false, false);
    const auto from_point = enumerate_functors(pt1, flat_iso);
    REQUIRE(from_point.size() == 2);
    CHECK_FALSE(is_equivalence(pt1, flat_iso, from_point[0]).ok());
    const auto into_marked = enumerate_functors(pt1, iso);
    CHECK(is_equivalence(pt1, iso, into_marked[0]).ok());

    std::vector<int> broken = identity_functor(iso);
    std::swap(broken[iso.find("f")], broken[iso.find("g")]);
    CHECK_FALSE(check_functor(iso, iso, broken).ok());
}

TEST_CASE("truncations on finite categories") {
    const FiniteCat t = corpus::two_iso(false);
    std::vector<int> back;
    const FiniteCat t1 = tau_m(t, 1, &back);
    CHECK(validate_finite_cat(t1).ok());
    CHECK(t1.find("al") < 0);
    CHECK(t1.find("f") >= 0);
    CHECK(t1.m == 1);
    for (int i = 0; i < t1.size(); ++i) CHECK(t.names[back[i]] == t1.names[i]);

    const FiniteCat tm = corpus::two_iso(true);
    const FiniteCat tm1 = tau_m(tm, 1);
    CHECK(tm1.find("al") >= 0);
    CHECK(tm1.size() == tm.size());

    const FiniteCat p0 = pi_m(corpus::walking_arrow(false), 0);
    CHECK(p0.m == 0);
    CHECK(p0.is_marked(p0.find("f")));

    // tau after iota is the identity on m-marked objects
    const FiniteCat z = corpus::two_iso(false, 1);
    const FiniteCat round = tau_m(iota(z, kInf), 1);
    CHECK(round.names == z.names);
    CHECK(marked_set(round) == marked_set(z));
    CHECK_THROWS_AS(iota(z, 0), std::invalid_argument);
}

TEST_CASE("truncations on free categories") {
    const MarkedCat d2 = flat(globe(2));
    const MarkedCat p1 = pi_m(d2, 1);
    CHECK(p1.marking.m == 1);
    CHECK(is_marked(p1, globe(2).atom("e2")));
    CHECK_FALSE(is_marked(p1, globe(2).atom("e1-")));
    CHECK(iota(p1, kInf).marking.m == kInf);
    CHECK(is_marked(iota(p1, kInf), globe(2).atom("e2")));

    CHECK(tau_m(d2, 1).base.counts() == std::vector<std::size_t>{2, 2});
    const MarkedCat top{globe(2), {kInf, {"e2"}, {}}};
    CHECK(tau_m(top, 1).base.counts() == std::vector<std::size_t>{2, 2, 1});
    // a marked 3-cell between unmarked 2-cells does not survive on its own
    CHECK_THROWS_AS(tau_m(MarkedCat{globe(3), {kInf, {"e3"}, {}}}, 1), std::invalid_argument);
}

TEST_CASE("property: corpus tables are valid and large enough") {
    const auto corpus = corpus::finite_corpus();
    CHECK(corpus.size() >= 20);
    for (const auto& e : corpus) {
        const Report r = validate_finite_cat(e.cat);
        CHECK_MESSAGE(r.ok(), e.label << ": " << (r.ok() ? "" : r.issues[0]));
        CHECK(is_equivalence(e.cat, e.cat, identity_functor(e.cat)).ok());
        CHECK(is_isofibration(e.cat, e.cat, identity_functor(e.cat)).ok());
    }
}

TEST_CASE("property: marked equals invertible exactly when prefibrant and two-out-of-six") {
    for (const auto& e : corpus::finite_corpus()) {
        const bool lhs = marked_iff_invertible(e.cat).ok();
        const bool rhs = is_prefibrant(e.cat).ok() && satisfies_2oo6(e.cat).ok();
        CHECK_MESSAGE(lhs == rhs, e.label);
    }
}

TEST_CASE("property: coinductive invertibles") {
    for (const auto& e : corpus::finite_corpus()) {
        const auto ci = coinductive_invertibles(e.cat);
        const Report r = check_coinductive_properties(e.cat, ci);
        CHECK_MESSAGE(r.ok(), e.label << ": " << (r.ok() ? "" : r.issues[0]));
        if (is_prefibrant(e.cat).ok()) {
            const auto marked = marked_set(e.cat);
            CHECK_MESSAGE(std::includes(ci.begin(), ci.end(), marked.begin(), marked.end()), e.label);
        }
        // cells above the threshold stay marked, so the new marking is exactly the invertibles only when they all are
        bool above_invertible = true;
        for (int i = 0; i < e.cat.size(); ++i)
            if (e.cat.dim[i] > e.cat.m && !ci.count(i)) above_invertible = false;
        if (!above_invertible) continue;
        const FiniteCat remarked = with_marking(e.cat, ci, e.cat.m);
        CHECK_MESSAGE(is_prefibrant(remarked).ok(), e.label);
        CHECK_MESSAGE(satisfies_2oo6(remarked).ok(), e.label);
    }
}

TEST_CASE("property: truncations on the corpus") {
    for (const auto& e : corpus::finite_corpus()) {
        const FiniteCat& c = e.cat;
        for (int m : {0, 1, 2}) {
            if (m >= c.m) continue;
            // the unit of pi -| iota only adds markings
            const FiniteCat up = iota(pi_m(c, m), c.m);
            for (int i = 0; i < c.size(); ++i)
                if (c.is_marked(i)) CHECK(up.is_marked(i));
            const FiniteCat t = tau_m(c, m);
            const Report r = validate_finite_cat(t);
            CHECK_MESSAGE(r.ok(), e.label << " m=" << m << ": " << (r.ok() ? "" : r.issues[0]));
            for (int i = 0; i < t.size(); ++i)
                if (t.dim[i] > m) CHECK(t.is_marked(i));
        }
    }
}

TEST_CASE("property: truncation adjunctions on further pairs") {
    using namespace corpus;
    const std::vector<FiniteCat> left = {point_cat(2), codiscrete(2, false), cyclic_group(3, false), scalar_group(false)};
    const std::vector<FiniteCat> right = {codiscrete(2, true), cyclic_group(3, true), two_iso(false), inverse_quotient(true)};
    int nonempty = 0;
    for (int m : {0, 1}) {
        for (const auto& x0 : left)
            for (const auto& y0 : right) {
                const int bound = std::max(x0.bound, y0.bound);
                const FiniteCat X = pad_bound(x0, bound), Yp = pad_bound(y0, bound);
                const FiniteCat Y = with_marking(Yp, marked_set(Yp), m);
                const auto lhs = functor_set(pi_m(X, m), Y);
                CHECK(lhs == functor_set(X, iota(Y, kInf)));
                nonempty += !lhs.empty();

                std::vector<int> back;
                const FiniteCat tx = tau_m(X, m, &back);
                std::set<std::vector<int>> pushed;
                for (const auto& g : functor_set(Y, tx)) {
                    std::vector<int> h;
                    for (int v : g) h.push_back(back[v]);
                    pushed.insert(h);
                }
                CHECK(functor_set(iota(Y, kInf), X) == pushed);
            }
    }
    CHECK(nonempty > 0);
}

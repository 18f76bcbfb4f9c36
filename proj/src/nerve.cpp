#include "graycat/nerve.hpp"

#include <algorithm>
#include <map>

#include "graycat/catalog.hpp"

namespace graycat {

// ---------------------------------------------------------------- orientals

std::string simplex_id(const std::vector<int>& vertices) {
    std::string s;
    for (int v : vertices) {
        if (v < 0 || v > 9) throw std::invalid_argument("simplex ids support vertices 0..9");
        s += static_cast<char>('0' + v);
    }
    return s;
}

static VertexSet vertices_of(const Id& id) {
    VertexSet v;
    for (char ch : id) v.push_back(ch - '0');
    return v;
}

Polygraph oriental(int n) {
    if (n < 0 || n > 9) throw std::invalid_argument("oriental: need 0 <= n <= 9");
    auto pt = [](int i) { return Polygraph::from_generators(std::to_string(i), {{std::to_string(i), 0, {}, {}}}); };
    Polygraph cur = pt(0);
    for (int i = 1; i <= n; ++i) cur = join_polygraph(cur, pt(i));
    auto digits = [](const Id& id) {
        Id out;
        for (char ch : id)
            if (ch >= '0' && ch <= '9') out += ch;
        return out;
    };
    return Polygraph::from_complex("O_" + std::to_string(n), rename_complex(cur.complex(), digits));
}

PolyMorphism oriental_coface(int k, int i) {
    Polygraph lo = oriental(k - 1), hi = oriental(k);
    std::map<Id, CellTable> img;
    for (const auto& g : lo.generators()) {
        VertexSet v = vertices_of(g.id);
        for (int& x : v)
            if (x >= i) ++x;
        img[g.id] = hi.atom(simplex_id(v));
    }
    return make_morphism(lo, hi, img);
}

PolyMorphism oriental_degeneracy(int k, int i) {
    Polygraph hi = oriental(k), lo = oriental(k - 1);
    std::map<Id, CellTable> img;
    for (const auto& g : hi.generators()) {
        VertexSet v = vertices_of(g.id);
        bool both = std::count(v.begin(), v.end(), i) && std::count(v.begin(), v.end(), i + 1);
        if (both) {
            img[g.id] = identity(apply_assignment(img, g.src));
        } else {
            for (int& x : v)
                if (x > i) --x;
            img[g.id] = lo.atom(simplex_id(v));
        }
    }
    return make_morphism(hi, lo, img);
}

// ---------------------------------------------------------------- stratified sets

std::vector<std::size_t> StratSSet::counts() const {
    std::vector<std::size_t> out;
    for (const auto& level : simplices) out.push_back(level.size());
    return out;
}

std::size_t StratSSet::thin_count() const {
    std::size_t n = 0;
    for (const auto& level : simplices)
        for (const auto& s : level) n += s.thin ? 1 : 0;
    return n;
}

namespace {

struct Ref {
    int dim;  // of the nondegenerate simplex
    int nd;
    std::vector<int> map;  // monotone, into its vertex positions
};

Ref normalize(const StratSSet& s, Ref r) {
    while (true) {
        std::vector<bool> hit(r.dim + 1, false);
        for (int v : r.map) hit[v] = true;
        int missing = -1;
        for (int v = r.dim; v >= 0; --v)
            if (!hit[v]) {
                missing = v;
                break;
            }
        if (missing < 0) return r;
        const auto& face = s.simplices[r.dim][r.nd].faces.at(missing);
        std::vector<int> next;
        for (int v : r.map) next.push_back(face.surj.at(v > missing ? v - 1 : v));
        r = {face.surj.empty() ? 0 : face.surj.back(), face.nd, next};
    }
}

Ref face_of(const StratSSet& s, const Ref& r, int i) {
    std::vector<int> m = r.map;
    m.erase(m.begin() + i);
    return normalize(s, {r.dim, r.nd, m});
}

std::vector<int> iota_map(int d) {
    std::vector<int> v(d + 1);
    for (int i = 0; i <= d; ++i) v[i] = i;
    return v;
}

}  // namespace

Report validate_strat(const StratSSet& s) {
    Report rep;
    for (std::size_t k = 1; k < s.simplices.size(); ++k)
        for (std::size_t x = 0; x < s.simplices[k].size(); ++x) {
            const auto& sx = s.simplices[k][x];
            if (sx.faces.size() != k + 1) {
                rep.fail("simplex has the wrong number of faces");
                continue;
            }
            for (const auto& f : sx.faces) {
                if (f.surj.size() != k) rep.fail("face map has the wrong length");
                for (std::size_t j = 1; j < f.surj.size(); ++j)
                    if (f.surj[j] < f.surj[j - 1] || f.surj[j] > f.surj[j - 1] + 1) rep.fail("face map is not a surjection");
            }
            if (!rep.ok()) return rep;
            if (k < 2) continue;
            Ref me{static_cast<int>(k), static_cast<int>(x), iota_map(static_cast<int>(k))};
            for (int j = 1; j <= static_cast<int>(k); ++j)
                for (int i = 0; i < j; ++i) {
                    Ref a = face_of(s, face_of(s, me, j), i), b = face_of(s, face_of(s, me, i), j - 1);
                    if (a.dim != b.dim || a.nd != b.nd || a.map != b.map)
                        rep.fail("simplicial identity fails in dimension " + std::to_string(k));
                }
        }
    return rep;
}

std::set<VertexSet> faces_closure(const std::set<VertexSet>& generators) {
    std::set<VertexSet> out;
    std::vector<VertexSet> todo(generators.begin(), generators.end());
    while (!todo.empty()) {
        VertexSet v = todo.back();
        todo.pop_back();
        if (v.empty() || !out.insert(v).second) continue;
        for (std::size_t i = 0; i < v.size(); ++i) {
            VertexSet w = v;
            w.erase(w.begin() + i);
            todo.push_back(w);
        }
    }
    return out;
}

StratSSet regular_shape(const std::string& name, int n, const std::set<VertexSet>& simplices,
                        const std::function<bool(const VertexSet&)>& thin) {
    StratSSet s;
    s.name = name;
    s.ambient = n;
    int top = -1;
    for (const auto& v : simplices) {
        if (v.empty() || !std::is_sorted(v.begin(), v.end()) || std::adjacent_find(v.begin(), v.end()) != v.end())
            throw std::invalid_argument("regular shape: vertex lists must be strictly increasing");
        if (v.front() < 0 || v.back() > n) throw std::invalid_argument("regular shape: vertex out of range");
        top = std::max(top, static_cast<int>(v.size()) - 1);
    }
    if (faces_closure(simplices) != simplices) throw std::invalid_argument("regular shape: not closed under faces");
    s.simplices.assign(top + 1, {});
    std::map<VertexSet, int> index;
    for (int d = 0; d <= top; ++d)
        for (const auto& v : simplices) {
            if (static_cast<int>(v.size()) != d + 1) continue;
            StratSSet::Simplex sx;
            sx.vertices = v;
            sx.label = simplex_id(v);
            sx.thin = d >= 1 && thin && thin(v);
            if (d >= 1)
                for (int i = 0; i <= d; ++i) {
                    VertexSet w = v;
                    w.erase(w.begin() + i);
                    sx.faces.push_back({index.at(w), iota_map(d - 1)});
                }
            index[v] = static_cast<int>(s.simplices[d].size());
            s.simplices[d].push_back(sx);
        }
    return s;
}

std::set<VertexSet> regular_simplices(const StratSSet& s) {
    std::set<VertexSet> out;
    for (const auto& level : s.simplices)
        for (const auto& x : level) out.insert(x.vertices);
    return out;
}

std::set<VertexSet> regular_thin(const StratSSet& s) {
    std::set<VertexSet> out;
    for (const auto& level : s.simplices)
        for (const auto& x : level)
            if (x.thin) out.insert(x.vertices);
    return out;
}

bool same_regular(const StratSSet& a, const StratSSet& b) {
    return a.ambient == b.ambient && regular_simplices(a) == regular_simplices(b) && regular_thin(a) == regular_thin(b);
}

static std::set<VertexSet> full_simplex(int n) {
    if (n < 0) return {};
    return faces_closure({iota_map(n)});
}

static bool contains_all(const VertexSet& v, const VertexSet& need) {
    return std::includes(v.begin(), v.end(), need.begin(), need.end());
}

static VertexSet without(int n, int i) {
    VertexSet v;
    for (int j = 0; j <= n; ++j)
        if (j != i) v.push_back(j);
    return v;
}

static VertexSet window(int n, int k) {
    VertexSet w;
    for (int j = k - 1; j <= k + 1; ++j)
        if (j >= 0 && j <= n) w.push_back(j);
    return w;
}

static void check_nk(int n, int k, int min_n) {
    if (n < min_n || k < 0 || k > n) throw std::invalid_argument("shape: (n, k) out of range");
}

StratSSet simplex_shape(int n) {
    if (n < -1) throw std::invalid_argument("simplex: n >= -1");
    return regular_shape("D[" + std::to_string(n) + "]", n, full_simplex(n), nullptr);
}

StratSSet simplex_top_thin(int n) {
    if (n < 0) throw std::invalid_argument("simplex: n >= 0");
    return regular_shape("D[" + std::to_string(n) + "]_t", n, full_simplex(n),
                         [n](const VertexSet& v) { return static_cast<int>(v.size()) == n + 1; });
}

StratSSet complicial_simplex(int n, int k) {
    check_nk(n, k, 1);
    VertexSet w = window(n, k);
    return regular_shape("D^" + std::to_string(k) + "[" + std::to_string(n) + "]", n, full_simplex(n),
                         [w](const VertexSet& v) { return contains_all(v, w); });
}

StratSSet complicial_prime(int n, int k) {
    check_nk(n, k, 2);
    VertexSet w = window(n, k);
    std::set<VertexSet> extra;
    if (k - 1 >= 0) extra.insert(without(n, k - 1));
    if (k + 1 <= n) extra.insert(without(n, k + 1));
    return regular_shape("D^" + std::to_string(k) + "[" + std::to_string(n) + "]'", n, full_simplex(n),
                         [w, extra](const VertexSet& v) { return contains_all(v, w) || extra.count(v); });
}

StratSSet complicial_double_prime(int n, int k) {
    check_nk(n, k, 2);
    VertexSet w = window(n, k);
    std::set<VertexSet> extra{without(n, k)};
    if (k - 1 >= 0) extra.insert(without(n, k - 1));
    if (k + 1 <= n) extra.insert(without(n, k + 1));
    return regular_shape("D^" + std::to_string(k) + "[" + std::to_string(n) + "]''", n, full_simplex(n),
                         [w, extra](const VertexSet& v) { return contains_all(v, w) || extra.count(v); });
}

StratSSet equivalence_simplex() {
    return regular_shape("D[3]^eq", 3, full_simplex(3), [](const VertexSet& v) {
        return v.size() > 3 || v == VertexSet{0, 2} || v == VertexSet{1, 3};
    });
}

StratSSet sharp_simplex(int n) {
    return regular_shape("D[" + std::to_string(n) + "]^#", n, full_simplex(n), [](const VertexSet& v) { return v.size() > 1; });
}

StratSSet horn(int n, int k) {
    check_nk(n, k, 1);
    std::set<VertexSet> gens;
    for (int i = 0; i <= n; ++i)
        if (i != k) gens.insert(without(n, i));
    VertexSet w = window(n, k);
    return regular_shape("L^" + std::to_string(k) + "[" + std::to_string(n) + "]", n, faces_closure(gens),
                         [w](const VertexSet& v) { return contains_all(v, w); });
}

StratSSet join_strat(const StratSSet& a, const StratSSet& b) {
    if ((!a.simplices.empty() && a.ambient < 0) || (!b.simplices.empty() && b.ambient < 0))
        throw std::invalid_argument("join: regular shapes only");
    const int shift = a.ambient + 1;
    const int n = a.ambient + b.ambient + 1;
    auto sa = regular_simplices(a), sb = regular_simplices(b);
    auto ta = regular_thin(a), tb = regular_thin(b);
    sa.insert(VertexSet{});
    sb.insert(VertexSet{});
    std::set<VertexSet> all;
    std::set<VertexSet> thin;
    for (const auto& x : sa)
        for (const auto& y : sb) {
            if (x.empty() && y.empty()) continue;
            VertexSet v = x;
            for (int j : y) v.push_back(j + shift);
            all.insert(v);
            if (ta.count(x) || tb.count(y)) thin.insert(v);
        }
    return regular_shape("(" + a.name + "*" + b.name + ")", n, all, [thin](const VertexSet& v) { return thin.count(v) > 0; });
}

MarkedCat realize_regular(const StratSSet& s, int m) {
    if (s.ambient < 0 && !s.simplices.empty()) throw std::invalid_argument("realize: not a regular subcomplex");
    if (s.ambient < 0) return flat(empty_polygraph(), m);
    std::set<Id> ids;
    MarkedCat out{{}, {m, {}, {}}};
    for (const auto& v : regular_simplices(s)) ids.insert(simplex_id(v));
    out.base = sub_polygraph(oriental(s.ambient), ids, "|" + s.name + "|");
    for (const auto& v : regular_thin(s)) out.marking.generator_seeds.insert(simplex_id(v));
    return out;
}

MarkedMap realize_inclusion(const StratSSet& sub, const StratSSet& shape, int m) {
    if (sub.ambient != shape.ambient) throw std::invalid_argument("realize: ambient simplices differ");
    auto ss = regular_simplices(sub), sh = regular_simplices(shape);
    if (!std::includes(sh.begin(), sh.end(), ss.begin(), ss.end())) throw std::invalid_argument("realize: not a subcomplex");
    auto ts = regular_thin(sub), th = regular_thin(shape);
    if (!std::includes(th.begin(), th.end(), ts.begin(), ts.end()))
        throw std::invalid_argument("realize: thin simplices are not preserved");
    return marked_inclusion(realize_regular(sub, m), realize_regular(shape, m));
}

// ---------------------------------------------------------------- Street nerve

namespace {

struct OrientalData {
    Polygraph poly;
    std::vector<Id> gens;
    std::map<Id, int> gen_pos;
    std::vector<CellTable> cells;
    std::vector<Derivation> deriv;
    std::map<std::string, int> index;
    std::vector<int> src_idx, tgt_idx;  // per generator, catalog index of its boundaries
};

OrientalData oriental_data(int k, std::size_t budget) {
    OrientalData d;
    d.poly = oriental(k);
    CellCatalog cat(d.poly, budget);
    d.cells = cat.cells();
    for (std::size_t i = 0; i < d.cells.size(); ++i) {
        d.deriv.push_back(cat.derivation(static_cast<int>(i)));
        d.index[d.cells[i].str()] = static_cast<int>(i);
    }
    for (const auto& g : d.poly.generators()) {
        d.gen_pos[g.id] = static_cast<int>(d.gens.size());
        d.gens.push_back(g.id);
        d.src_idx.push_back(g.dim ? d.index.at(g.src.str()) : -1);
        d.tgt_idx.push_back(g.dim ? d.index.at(g.tgt.str()) : -1);
    }
    return d;
}

// Value of a catalog cell under a generator assignment.
int evaluate(const OrientalData& d, const FiniteCat& c, const std::vector<int>& img, int cell, std::map<int, int>& memo) {
    if (auto it = memo.find(cell); it != memo.end()) return it->second;
    const Derivation& dv = d.deriv[cell];
    int r = -1;
    switch (dv.kind) {
        case Derivation::Atom: r = img[d.gen_pos.at(dv.gen)]; break;
        case Derivation::Identity: {
            int a = evaluate(d, c, img, dv.a, memo);
            r = a < 0 ? -1 : c.ident[a];
            break;
        }
        case Derivation::Compose: {
            int a = evaluate(d, c, img, dv.a, memo), b = evaluate(d, c, img, dv.b, memo);
            r = (a < 0 || b < 0) ? -1 : c.compose(a, b, dv.level);
            break;
        }
    }
    memo[cell] = r;
    return r;
}

}  // namespace

Nerve street_nerve(const FiniteCat& c0, int kmax, std::size_t budget) {
    if (kmax < 0) throw std::invalid_argument("nerve: negative dimension");
    const FiniteCat c = pad_bound(c0, std::max(c0.bound, kmax + 1));
    Nerve out;
    out.nerve.name = "N(" + c0.name + ")";
    std::vector<OrientalData> data;
    std::vector<std::map<std::vector<int>, int>> lookup(kmax + 1);
    // decomposition of every simplex: nondegenerate index and surjection
    std::vector<std::vector<std::pair<int, std::vector<int>>>> decomp(kmax + 1);
    for (int k = 0; k <= kmax; ++k) {
        data.push_back(oriental_data(k, budget));
        const OrientalData& d = data.back();
        out.generator_order.push_back(d.gens);
        std::vector<std::vector<int>> found;
        std::vector<int> img(d.gens.size(), -1);
        std::function<void(std::size_t)> go = [&](std::size_t i) {
            if (found.size() > budget) throw BudgetExceeded("nerve: too many simplices");
            if (i == d.gens.size()) {
                found.push_back(img);
                return;
            }
            const int gd = d.poly.dim_of(d.gens[i]);
            std::vector<int> cands;
            if (gd == 0) {
                cands = c.of_dim(0);
            } else {
                std::map<int, int> memo;
                int s = evaluate(d, c, img, d.src_idx[i], memo), t = evaluate(d, c, img, d.tgt_idx[i], memo);
                if (s < 0 || t < 0) return;
                cands = c.cells_between(s, t, gd);
            }
            for (int y : cands) {
                img[i] = y;
                go(i + 1);
            }
            img[i] = -1;
        };
        go(0);
        out.all.push_back(found);
        out.all_thin.emplace_back();
        out.nerve.simplices.emplace_back();
        const int top = d.gen_pos.at(simplex_id(iota_map(k)));
        for (std::size_t x = 0; x < found.size(); ++x) {
            const auto& img_x = found[x];
            lookup[k][img_x] = static_cast<int>(x);
            bool thin = k >= 1 && c.is_marked(img_x[top]);
            out.all_thin[k].push_back(thin);
            // faces as simplices of dimension k-1
            std::vector<int> face_idx;
            if (k >= 1) {
                for (int i = 0; i <= k; ++i) {
                    const OrientalData& lo = data[k - 1];
                    std::vector<int> f(lo.gens.size());
                    for (std::size_t g = 0; g < lo.gens.size(); ++g) {
                        VertexSet v = vertices_of(lo.gens[g]);
                        for (int& t : v)
                            if (t >= i) ++t;
                        f[g] = img_x[d.gen_pos.at(simplex_id(v))];
                    }
                    face_idx.push_back(lookup[k - 1].at(f));
                }
            }
            // degenerate if x equals (d_i x) composed with the i-th degeneracy
            int degenerate_via = -1;
            for (int i = 0; i + 1 <= k && degenerate_via < 0; ++i) {
                PolyMorphism sigma = oriental_degeneracy(k, i);
                const OrientalData& lo = data[k - 1];
                const auto& y = out.all[k - 1][face_idx[i]];
                std::map<int, int> memo;
                bool same = true;
                for (std::size_t g = 0; g < d.gens.size() && same; ++g) {
                    CellTable image = sigma.assignment.at(d.gens[g]);
                    const int n = image.n;
                    while (image.n > lo.poly.max_dim()) image = cell_source(image, image.n - 1);
                    int v = c.pad(evaluate(lo, c, y, lo.index.at(image.str()), memo), n);
                    if (v != img_x[g]) same = false;
                }
                if (same) degenerate_via = i;
            }
            if (degenerate_via >= 0) {
                const int i = degenerate_via;
                auto [nd, sy] = decomp[k - 1][face_idx[i]];
                std::vector<int> s;
                for (int v = 0; v <= k; ++v) s.push_back(sy[v <= i ? v : v - 1]);
                decomp[k].push_back({nd, s});
                continue;
            }
            StratSSet::Simplex sx;
            sx.thin = thin;
            for (std::size_t g = 0; g < d.gens.size(); ++g) {
                if (d.poly.dim_of(d.gens[g]) != 0) continue;
                sx.label += (sx.label.empty() ? "" : ",") + c.names[img_x[g]];
            }
            sx.label = "<" + sx.label + "|" + c.names[img_x[top]] + ">";
            for (int fi : face_idx) {
                auto [nd, s] = decomp[k - 1][fi];
                sx.faces.push_back({nd, s});
            }
            decomp[k].push_back({static_cast<int>(out.nerve.simplices[k].size()), iota_map(k)});
            out.nerve.simplices[k].push_back(sx);
        }
    }
    return out;
}

Nerve street_nerve(const MarkedCat& c, int kmax, std::size_t budget) {
    return street_nerve(to_finite_cat(c, budget, std::max(c.base.max_dim(), 0)).cat, kmax, budget);
}

}  // namespace graycat

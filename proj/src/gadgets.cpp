#include "graycat/gadgets.hpp"

#include "graycat/catalog.hpp"

namespace graycat {

// ---------------------------------------------------------------- marked maps

Report check_marked_map(const MarkedMap& f, std::size_t budget) {
    Report rep = check_morphism(f.underlying);
    if (!rep.ok()) return rep;
    auto check = [&](const CellTable& x, const std::string& what) {
        Membership mb = closure_contains(f.target, apply(f.underlying, x), budget);
        if (mb.verdict != Verdict::Marked)
            rep.fail("marked " + what + " maps to a cell that is " + verdict_name(mb.verdict) + " (" + mb.witness + ")");
    };
    for (const auto& g : marked_generators(f.source)) check(f.source.base.atom(g), "generator " + g);
    for (const auto& s : f.source.marking.cell_seeds) check(s, "cell " + s.str());
    return rep;
}

MarkedMap marked_inclusion(const MarkedCat& sub, const MarkedCat& super) {
    return {sub, super, inclusion_morphism(sub.base, super.base)};
}

bool is_sub_inclusion(const MarkedMap& f) {
    for (const auto& g : f.source.base.generators()) {
        if (!f.target.base.has(g.id)) return false;
        if (f.underlying.assignment.at(g.id) != f.target.base.atom(g.id)) return false;
    }
    return true;
}

std::set<Id> image_generators(const MarkedMap& f) {
    std::set<Id> out;
    for (const auto& [g, img] : f.underlying.assignment) {
        const auto& t = img.top().terms;
        if (t.size() == 1 && t.begin()->second == 1 && f.target.base.has(t.begin()->first) &&
            f.target.base.atom(t.begin()->first) == img)
            out.insert(t.begin()->first);
    }
    return out;
}

std::optional<std::map<Id, Id>> inclusions_isomorphic(const MarkedMap& a, const MarkedMap& b) {
    if (!is_sub_inclusion(a) || !is_sub_inclusion(b)) return std::nullopt;
    auto ta = marked_generators(a.target), tb = marked_generators(b.target);
    auto sa = marked_generators(a.source), sb = marked_generators(b.source);
    auto ia = image_generators(a), ib = image_generators(b);
    auto colour = [](const Id& g, const std::set<Id>& t, const std::set<Id>& s, const std::set<Id>& i) {
        return (t.count(g) ? 1 : 0) + (s.count(g) ? 2 : 0) + (i.count(g) ? 4 : 0);
    };
    return find_isomorphism(a.target.base, b.target.base, [&](const Id& g, const Id& h) {
        return colour(g, ta, sa, ia) == colour(h, tb, sb, ib);
    });
}

// ---------------------------------------------------------------- generating maps

MarkedMap boundary_cofibration(int n, int m) { return marked_inclusion(flat(sphere(n), m), flat(globe(n), m)); }

MarkedMap marking_cofibration(int n, int m) {
    MarkedCat top = flat(globe(n), m);
    if (n >= 1) top.marking.generator_seeds.insert("e" + std::to_string(n));
    return marked_inclusion(flat(globe(n), m), top);
}

MarkedMap j_plus(int m) {
    Polygraph i = interval_polygraph();
    return marked_inclusion(flat(sub_polygraph(i, {"a0+"}, "pt"), m), sharp(i, m));
}

MarkedMap pushout_product(const MarkedMap& f, const MarkedMap& g, TensorMode mode) {
    if (!is_sub_inclusion(f) || !is_sub_inclusion(g))
        throw std::invalid_argument("pushout product: both maps must be sub-polygraph inclusions");
    MarkedCat target = marked_tensor(f.target, g.target, mode);
    std::set<Id> ids;
    for (const auto& x : f.source.base.generators())
        for (const auto& b : g.target.base.generators()) ids.insert(tensor_id(x.id, b.id));
    for (const auto& y : f.target.base.generators())
        for (const auto& a : g.source.base.generators()) ids.insert(tensor_id(y.id, a.id));
    MarkedCat source{sub_polygraph(target.base, ids, "corner"), {target.marking.m, {}, {}}};
    for (const MarkedCat& part : {marked_tensor(f.source, g.target, mode), marked_tensor(f.target, g.source, mode)})
        for (const auto& s : part.marking.generator_seeds) source.marking.generator_seeds.insert(s);
    return marked_inclusion(source, target);
}

MarkedMap anodyne_gen(int n, bool saturation, int m) {
    return pushout_product(j_plus(m), saturation ? marking_cofibration(n, m) : boundary_cofibration(n, m),
                           TensorMode::Pseudo);
}

// ---------------------------------------------------------------- hemisphere retract

bool HemisphereResult::ok() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

static Id gid(int k, const std::string& sign) { return "e" + std::to_string(k) + sign; }

static bool supports_within(const CellTable& x, const std::set<Id>& allowed, std::string& bad) {
    for (int d = 0; d <= x.n; ++d)
        for (const auto& g : cell_support(x, d))
            if (!allowed.count(g)) {
                bad = g;
                return false;
            }
    return true;
}

HemisphereResult hemisphere_retract(int n) {
    Polygraph big = globe(n + 1);
    MarkedCat disc{big, {kInf, {gid(n + 1, "")}, {}}};
    MarkedCat cyl = pseudo_tensor(sharp(interval_polygraph()), flat(globe(n)));
    const Id top = tensor_id("a", gid(n, ""));
    const CellTable top_cell = cyl.base.atom(top);

    std::map<Id, CellTable> i_img;
    i_img[gid(n + 1, "")] = top_cell;
    for (int k = 0; k <= n; ++k) {
        i_img[gid(k, "-")] = cell_source(top_cell, k);
        i_img[gid(k, "+")] = cell_target(top_cell, k);
    }
    std::map<Id, CellTable> p_img;
    for (const char* end : {"a0-", "a0+"}) {
        const std::string sign = end == std::string("a0-") ? "-" : "+";
        for (int k = 0; k < n; ++k)
            for (const char* mu : {"-", "+"}) p_img[tensor_id(end, gid(k, mu))] = big.atom(gid(k, mu));
        p_img[tensor_id(end, gid(n, ""))] = big.atom(gid(n, sign));
    }
    for (int k = 0; k < n; ++k)
        for (const char* mu : {"-", "+"}) p_img[tensor_id("a", gid(k, mu))] = identity(big.atom(gid(k, mu)));
    p_img[top] = big.atom(gid(n + 1, ""));

    HemisphereResult r{{disc, cyl, make_morphism(big, cyl.base, i_img)}, {cyl, disc, make_morphism(cyl.base, big, p_img)}, {}};
    const std::string tag = " n=" + std::to_string(n);
    Report ri = check_marked_map(r.i), rp = check_marked_map(r.p);
    r.checks.push_back({"inclusion is a marked map" + tag, ri.ok(), ri.ok() ? "" : ri.issues.front()});
    r.checks.push_back({"retraction is a marked map" + tag, rp.ok(), rp.ok() ? "" : rp.issues.front()});
    bool retract = same_morphism(compose_morphisms(r.i.underlying, r.p.underlying), identity_morphism(big));
    r.checks.push_back({"retraction after inclusion is the identity" + tag, retract, ""});

    std::set<Id> disc_dom, corner_dom;
    for (const auto& g : big.generators())
        if (g.id != gid(n + 1, "") && g.id != gid(n, "-")) disc_dom.insert(g.id);
    for (const auto& g : cyl.base.generators())
        if (g.id != top && g.id != tensor_id("a0-", gid(n, ""))) corner_dom.insert(g.id);
    MarkedMap corner = anodyne_gen(n, false);
    std::set<Id> computed;
    for (const auto& g : corner.source.base.generators()) computed.insert(g.id);
    r.checks.push_back({"corner domain is the pushout-product domain" + tag, computed == corner_dom, ""});

    std::string bad;
    bool fwd = true;
    for (const auto& g : disc_dom)
        if (!supports_within(r.i.underlying.assignment.at(g), corner_dom, bad)) {
            fwd = false;
            break;
        }
    r.checks.push_back({"inclusion restricts to the horn domains" + tag, fwd, fwd ? "" : "hits " + bad});
    bool back = true;
    for (const auto& g : corner_dom)
        if (!supports_within(r.p.underlying.assignment.at(g), disc_dom, bad)) {
            back = false;
            break;
        }
    r.checks.push_back({"retraction restricts to the horn domains" + tag, back, back ? "" : "hits " + bad});
    return r;
}

// ---------------------------------------------------------------- equations

CellTable whisker(const EquationShape& e, const CellTable& core) {
    CellTable cur = core;
    for (std::size_t i = 0; i < e.steps.size(); ++i) {
        int k = static_cast<int>(i);
        cur = compose(compose(e.steps[i].left, cur, k), e.steps[i].right, k);
    }
    return cur;
}

Report check_equation(const EquationShape& e, std::size_t budget) {
    Report rep;
    const Polygraph& p = e.carrier.base;
    if (!p.has(e.x) || !p.has(e.y)) {
        rep.fail("x or y is not a generator");
        return rep;
    }
    const int n = p.dim_of(e.x);
    if (p.dim_of(e.y) != n + 1) rep.fail("y does not have dimension dim(x)+1");
    for (const auto& g : p.generators())
        if (g.dim > n + 1 || (g.dim == n + 1 && g.id != e.y)) rep.fail("extra generator " + g.id + " in dimension >= dim(y)");
    if (!rep.ok()) return rep;
    if (static_cast<int>(e.steps.size()) != n) rep.fail("decomposition has the wrong length");
    if (!rep.ok()) return rep;

    const Generator& y = p.gen(e.y);
    const CellTable& holder = e.side == EquationShape::Left ? y.src : y.tgt;
    const CellTable& other = e.side == EquationShape::Left ? y.tgt : y.src;
    if (!is_marked(e.carrier, p.atom(e.y), budget)) rep.fail("y is not marked");
    if (n >= 1 && n <= e.carrier.marking.m) {
        bool xm = is_marked(e.carrier, p.atom(e.x), budget);
        if (e.saturation && !xm) rep.fail("x is not marked in a saturation");
        if (!e.saturation && xm) rep.fail("x is marked");
    }
    if (holder.top().coef(e.x) != 1) rep.fail("x does not occur exactly once in the boundary of y");
    if (cell_support(other, n).count(e.x)) rep.fail("x occurs in the opposite boundary of y");
    for (std::size_t i = 0; i < e.steps.size(); ++i) {
        const std::string lvl = std::to_string(i + 1);
        for (const CellTable* c : {&e.steps[i].left, &e.steps[i].right}) {
            if (!is_marked(e.carrier, *c, budget)) rep.fail("whiskering cell at level " + lvl + " is not marked");
            if (cell_support(*c, c->n).count(e.x)) rep.fail("whiskering cell at level " + lvl + " contains x");
        }
    }
    if (!rep.ok()) return rep;
    CellTable rebuilt;
    try {
        rebuilt = whisker(e, p.atom(e.x));
    } catch (const std::exception& ex) {
        rep.fail(std::string("decomposition does not compose: ") + ex.what());
        return rep;
    }
    if (!cell_eq(rebuilt, holder)) rep.fail("decomposition composes to " + rebuilt.str() + ", not the boundary of y");
    if (e.saturation && !is_marked(e.carrier, other, budget)) rep.fail("opposite boundary of y is not marked");
    return rep;
}

std::set<Id> lambda_generators(const EquationShape& e) {
    std::set<Id> out;
    for (const auto& g : e.carrier.base.generators())
        if (e.saturation || (g.id != e.x && g.id != e.y)) out.insert(g.id);
    return out;
}

MarkedMap equation_map(const EquationShape& e) {
    std::set<Id> ids = lambda_generators(e);
    MarkedCat src{sub_polygraph(e.carrier.base, ids, "horn"), {e.carrier.marking.m, {}, {}}};
    for (const auto& g : e.carrier.marking.generator_seeds)
        if (ids.count(g) && !(e.saturation && g == e.x)) src.marking.generator_seeds.insert(g);
    return marked_inclusion(src, e.carrier);
}

namespace {

// Globe of dimension n with its top renamed x, plus room for more generators.
std::vector<Generator> globe_with_x(int n, const Id& x) {
    std::vector<Generator> gens;
    const Polygraph d = globe(n);
    for (const auto& g : d.generators()) {
        Generator h = g;
        if (g.dim == n) {
            h.id = x;
        }
        gens.push_back(h);
    }
    return gens;
}

CellTable atom_of(const std::vector<Generator>& gens, const Id& id) {
    return Polygraph::from_generators("tmp", gens).atom(id);
}

Generator parallel_to(const Id& id, const std::vector<Generator>& gens, const Id& like) {
    for (const auto& g : gens)
        if (g.id == like) return {id, g.dim, g.src, g.tgt};
    throw std::logic_error("parallel_to: missing " + like);
}

EquationShape division(int k, int n, bool left, bool saturation, int m) {
    if (k < 1 || k > n) throw std::invalid_argument("division: need 1 <= k <= n");
    auto gens = globe_with_x(n, "x");
    const Id edge = gid(k - 1, left ? "-" : "+");
    gens.push_back(parallel_to("c", gens, edge));
    Generator a{"a", k, {}, {}};
    a.src = atom_of(gens, left ? "c" : edge);
    a.tgt = atom_of(gens, left ? edge : "c");
    gens.push_back(a);
    CellTable ac = atom_of(gens, "a"), xc = atom_of(gens, "x");
    CellTable comp = left ? compose(ac, xc, k - 1) : compose(xc, ac, k - 1);
    if (n == 0) throw std::logic_error("division: n = 0");
    gens.push_back({"b", n, cell_source(comp, n - 1), cell_target(comp, n - 1)});
    gens.push_back({"y", n + 1, comp, atom_of(gens, "b")});

    EquationShape e;
    e.name = std::string(left ? "left" : "right") + (saturation ? "-sat" : "") + "(" + std::to_string(k) + "," +
             std::to_string(n) + ")";
    e.carrier = {Polygraph::from_generators(e.name, gens), {m, {"a", "y"}, {}}};
    if (saturation) {
        e.carrier.marking.generator_seeds.insert("x");
        e.carrier.marking.generator_seeds.insert("b");
    }
    e.x = "x";
    e.y = "y";
    e.side = EquationShape::Left;
    e.saturation = saturation;
    CellTable cur = xc;
    for (int i = 1; i <= n; ++i) {
        WhiskerStep s{identity(cell_source(cur, i - 1)), identity(cell_target(cur, i - 1))};
        if (i == k) (left ? s.left : s.right) = ac;
        cur = compose(compose(s.left, cur, i - 1), s.right, i - 1);
        e.steps.push_back(s);
    }
    return e;
}

}  // namespace

EquationShape left_division(int k, int n, bool saturation, int m) { return division(k, n, true, saturation, m); }
EquationShape right_division(int k, int n, bool saturation, int m) { return division(k, n, false, saturation, m); }

EquationShape cylinder_equation(int n, bool saturation, int m) {
    if (saturation && n < 1) throw std::invalid_argument("cylinder saturation needs n >= 1");
    MarkedMap gen = anodyne_gen(n, saturation, m);
    EquationShape e;
    e.name = std::string(saturation ? "cyl-sat(" : "cyl(") + std::to_string(n) + ")";
    e.carrier = gen.target;
    e.x = tensor_id("a0-", gid(n, ""));
    e.y = tensor_id("a", gid(n, ""));
    e.saturation = saturation;
    CellTable cur = e.carrier.base.atom(e.x);
    for (int i = 1; i <= n; ++i) {
        WhiskerStep s{identity(cell_source(cur, i - 1)), e.carrier.base.atom(tensor_id("a", gid(i - 1, "+")))};
        cur = compose(compose(s.left, cur, i - 1), s.right, i - 1);
        e.steps.push_back(s);
    }
    return e;
}

// ---------------------------------------------------------------- uniqueness gadgets

Id copy_id(const Id& id) { return id + "'"; }

namespace {

MarkedCat doubled(const EquationShape& p) {
    if (p.saturation) throw std::invalid_argument("uniqueness gadgets are built from equations, not saturations");
    std::set<Id> sub = lambda_generators(p);
    std::map<Id, CellTable> glue;
    for (const auto& g : sub) glue[g] = p.carrier.base.atom(g);
    MarkedCat base = p.carrier;
    return marked_pushout_extend(base, p.carrier, sub, glue, copy_id).result;
}

MarkedCat add_generators(const MarkedCat& c, const std::vector<Generator>& extra, const std::set<Id>& marked) {
    std::vector<Generator> gens = c.base.generators();
    gens.insert(gens.end(), extra.begin(), extra.end());
    MarkedCat out{Polygraph::from_generators(c.base.name + "+", gens), c.marking};
    for (const auto& g : marked) out.marking.generator_seeds.insert(g);
    return out;
}

}  // namespace

MarkedMap uni(const EquationShape& p) {
    MarkedCat q = doubled(p);
    Generator z{"z", p.carrier.base.dim_of(p.x) + 1, q.base.atom(p.x), q.base.atom(copy_id(p.x))};
    return marked_inclusion(q, add_generators(q, {z}, {"z"}));
}

EquationShape uni_coh_equation(const EquationShape& p) {
    MarkedCat q = doubled(p);
    const int n = p.carrier.base.dim_of(p.x);
    Generator z{"z", n + 1, q.base.atom(p.x), q.base.atom(copy_id(p.x))};
    MarkedCat with_z = add_generators(q, {z}, {});
    EquationShape e;
    e.name = "unicoh" + p.name;
    e.x = "z";
    e.y = "w";
    e.side = p.side;
    e.steps = p.steps;
    const CellTable zc = with_z.base.atom("z");
    const CellTable y = q.base.atom(p.y), y2 = q.base.atom(copy_id(p.y));
    CellTable moved = whisker(e, zc);
    Generator w{"w", n + 2, {}, {}};
    if (p.side == EquationShape::Left) {
        e.steps.push_back({identity(cell_source(moved, n)), y2});
        w.src = compose(moved, y2, n);
        w.tgt = y;
    } else {
        e.steps.push_back({y, identity(cell_target(moved, n))});
        w.src = compose(y, moved, n);
        w.tgt = y2;
    }
    e.carrier = add_generators(with_z, {w}, {"w"});
    return e;
}

MarkedMap uni_coh(const EquationShape& p) {
    EquationShape e = uni_coh_equation(p);
    return marked_inclusion(doubled(p), e.carrier);
}

// ---------------------------------------------------------------- two-out-of-six

MarkedMap two_out_of_six_map(int n, int m) {
    if (n < 1) throw std::invalid_argument("two-out-of-six needs n >= 1");
    std::vector<Generator> gens;
    const Polygraph base = globe(n - 1);
    for (const auto& g : base.generators())
        if (g.dim < n - 1) gens.push_back(g);
    const Id like = n >= 2 ? "e" + std::to_string(n - 1) : "";
    for (int i = 0; i < 4; ++i) {
        const Id c = "c" + std::to_string(i);
        if (n >= 2) {
            const Generator& top = base.gen(like);
            gens.push_back({c, n - 1, top.src, top.tgt});
        } else {
            gens.push_back({c, 0, {}, {}});
        }
    }
    const char* names[3] = {"f", "g", "h"};
    for (int i = 0; i < 3; ++i)
        gens.push_back({names[i], n, atom_of(gens, "c" + std::to_string(i)), atom_of(gens, "c" + std::to_string(i + 1))});
    Polygraph x = Polygraph::from_generators("X_" + std::to_string(n), gens);
    MarkedCat src = mark_cells(flat(x, m), {compose(x.atom("f"), x.atom("g"), n - 1), compose(x.atom("g"), x.atom("h"), n - 1)});
    MarkedCat tgt{x, {m, {"f", "g", "h"}, {}}};
    return {src, tgt, identity_morphism(x)};
}

// ---------------------------------------------------------------- tower stages

Polygraph e_stage(int n) {
    if (n < 1) throw std::invalid_argument("e_stage needs n >= 1");
    std::vector<Generator> gens{{"a", 0, {}, {}}, {"b", 0, {}, {}}};
    gens.push_back({"f", 1, point_cell("a"), point_cell("b")});
    gens.push_back({"g", 1, point_cell("b"), point_cell("a")});
    gens.push_back({"h", 1, point_cell("b"), point_cell("a")});
    auto at = [&](const Id& id) { return atom_of(gens, id); };
    gens.push_back({"alpha", 2, identity(point_cell("b")), compose(at("g"), at("f"), 0)});
    gens.push_back({"beta", 2, identity(point_cell("a")), compose(at("f"), at("h"), 0)});
    Polygraph e1 = Polygraph::from_generators("E_1", gens);
    if (n == 1) return e1;
    Polygraph s = suspend(e1, n - 1);
    s.name = "E_" + std::to_string(n);
    return s;
}

static Polygraph spine() {
    return Polygraph::from_generators("P_0", {{"a", 0, {}, {}}, {"b", 0, {}, {}}, {"e1", 1, point_cell("a"), point_cell("b")}});
}

std::vector<CellTable> one_cells_of_interval() {
    CellCatalog cat(spine(), 1000, 1);
    std::vector<CellTable> out;
    for (int i : cat.of_dim(1)) out.push_back(cat.cells()[i]);
    return out;
}

Polygraph p_stage(int k) {
    if (k == 0) return spine();
    if (k != 1) throw std::invalid_argument("p_stage is only built for k <= 1");
    Polygraph cur = spine();
    Polygraph e = e_stage(1);
    auto arrows = one_cells_of_interval();
    for (std::size_t i = 0; i < arrows.size(); ++i) {
        const CellTable& c = arrows[i];
        std::map<Id, CellTable> glue{{"a", cell_source(c, 0)}, {"b", cell_target(c, 0)}, {"f", c}};
        const std::string tag = "@" + std::to_string(i);
        cur = pushout_extend(cur, e, {"a", "b", "f"}, glue, [&](const Id& id) { return id + tag; }).result;
    }
    cur.name = "P_1";
    return cur;
}

Polygraph c_stage(int n) {
    if (n < 1 || n > 2) throw std::invalid_argument("c_stage is only built for 1 <= n <= 2");
    Polygraph cur = spine();
    for (int k = 1; k < n; ++k) {
        std::map<Id, CellTable> glue;
        for (const char* g : {"a", "b", "e1"}) glue[g] = cur.atom(g);
        cur = pushout_extend(cur, p_stage(k), {"a", "b", "e1"}, glue, [](const Id& id) { return id; }).result;
    }
    cur.name = "C_" + std::to_string(n);
    return cur;
}

Polygraph d_stage(int n) {
    Polygraph d = collapse_generator(c_stage(n), "e1").first;
    d.name = "D'_" + std::to_string(n);
    return d;
}

PolyMorphism c_to_d_collapse(int n) { return collapse_generator(c_stage(n), "e1").second; }

Polygraph d_stage_by_gluing(int n) {
    if (n < 1 || n > 2) throw std::invalid_argument("d_stage_by_gluing is only built for 1 <= n <= 2");
    Polygraph cur = Polygraph::from_generators("pt", {{"a", 0, {}, {}}});
    for (int k = 1; k < n; ++k) {
        std::map<Id, CellTable> glue{{"a", point_cell("a")}, {"b", point_cell("a")}, {"e1", identity(point_cell("a"))}};
        cur = pushout_extend(cur, p_stage(k), {"a", "b", "e1"}, glue, copy_id).result;
    }
    return cur;
}

}  // namespace graycat

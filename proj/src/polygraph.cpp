#include "graycat/polygraph.hpp"

#include <algorithm>
#include <stdexcept>

namespace graycat {

namespace {

CellTable atom_from(const Id& id, int n, const CellTable& src, const CellTable& tgt) {
    if (n == 0) return point_cell(id);
    CellTable x;
    x.n = n;
    x.neg.assign(src.neg.begin(), src.neg.begin() + (n - 1));
    x.pos.assign(src.pos.begin(), src.pos.begin() + (n - 1));
    x.neg.push_back(src.top());
    x.pos.push_back(tgt.top());
    x.neg.push_back(Chain::of(n, id));
    x.pos.push_back(Chain::of(n, id));
    return x;
}

std::vector<Generator> sorted_by_dim(std::vector<Generator> gens) {
    std::stable_sort(gens.begin(), gens.end(), [](const Generator& a, const Generator& b) { return a.dim < b.dim; });
    return gens;
}

}  // namespace

// ---------------------------------------------------------------- Polygraph

Polygraph Polygraph::from_complex(std::string name, const DirComplex& c) {
    Report rep = loopfree_report(c);
    if (!rep.ok()) throw std::invalid_argument("complex is not loop-free unital: " + rep.issues.front());
    std::vector<Generator> gens;
    for (int d = 0; d <= c.max_dim(); ++d) {
        for (const auto& id : c.basis(d)) {
            Generator g{id, d, {}, {}};
            if (d > 0) {
                CellTable a = graycat::atom(c, id);
                g.src = cell_source(a, d - 1);
                g.tgt = cell_target(a, d - 1);
            }
            gens.push_back(g);
        }
    }
    return from_generators(std::move(name), gens);
}

Polygraph Polygraph::from_generators(std::string name, const std::vector<Generator>& in) {
    Polygraph p;
    p.name = std::move(name);
    p.gens_ = sorted_by_dim(in);
    for (std::size_t i = 0; i < p.gens_.size(); ++i) {
        const auto& g = p.gens_[i];
        if (p.index_.count(g.id)) throw std::invalid_argument("duplicate generator " + g.id);
        p.index_[g.id] = i;
        if (g.dim == 0) {
            p.complex_.add(g.id, 0);
        } else {
            if (g.src.n != g.dim - 1 || g.tgt.n != g.dim - 1)
                throw std::invalid_argument("generator " + g.id + ": boundary has wrong dimension");
            p.complex_.add(g.id, g.dim, g.src.top(), g.tgt.top());
        }
    }
    for (const auto& g : p.gens_) {
        if (g.dim == 0) continue;
        for (const CellTable* b : {&g.src, &g.tgt}) {
            Report r = validate_cell(p.complex_, *b);
            if (!r.ok()) throw std::invalid_argument("generator " + g.id + ": invalid boundary: " + r.issues.front());
            for (int k = 0; k <= b->n; ++k)
                for (const auto& [e, c] : b->neg[k].terms) {
                    (void)c;
                    if (p.dim_of(e) >= g.dim) throw std::invalid_argument("generator " + g.id + ": boundary not lower");
                }
        }
        for (int j = 0; j + 1 < g.dim; ++j)
            if (g.src.neg[j] != g.tgt.neg[j] || g.src.pos[j] != g.tgt.pos[j])
                throw std::invalid_argument("generator " + g.id + ": source and target are not parallel");
    }
    bool lf = is_loopfree_unital(p.complex_);
    if (lf)
        for (const auto& g : p.gens_)
            if (graycat::atom(p.complex_, g.id) != p.atom(g.id)) lf = false;
    p.loop_free_ = lf;
    return p;
}

const Generator& Polygraph::gen(const Id& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw std::out_of_range("unknown generator " + id);
    return gens_[it->second];
}

CellTable Polygraph::atom(const Id& id) const {
    const auto& g = gen(id);
    return atom_from(g.id, g.dim, g.src, g.tgt);
}

// ---------------------------------------------------------------- morphisms

CellTable apply_assignment(const std::map<Id, CellTable>& images, const CellTable& x) {
    auto image_top = [&](const Id& b, int j) -> Chain {
        auto it = images.find(b);
        if (it == images.end()) throw std::invalid_argument("no image for generator " + b);
        const CellTable& im = it->second;
        if (im.n < j) return Chain(j);
        if (im.n > j) throw std::invalid_argument("image of " + b + " has too high a dimension");
        return im.top();
    };
    CellTable r;
    r.n = x.n;
    r.neg.resize(x.n + 1);
    r.pos.resize(x.n + 1);
    for (int j = 0; j <= x.n; ++j) {
        auto img = [&](const Id& b) { return image_top(b, j); };
        r.neg[j] = map_chain(x.neg[j], img, j);
        r.pos[j] = map_chain(x.pos[j], img, j);
    }
    return r;
}

PolyMorphism make_morphism(const Polygraph& source, const Polygraph& target, const std::map<Id, CellTable>& images) {
    PolyMorphism f{source, target, {}};
    for (const auto& g : source.generators()) {
        auto it = images.find(g.id);
        if (it == images.end()) throw std::invalid_argument("morphism: no image for " + g.id);
        if (it->second.n > g.dim) throw std::invalid_argument("morphism: image of " + g.id + " too high");
        f.assignment[g.id] = pad_to(it->second, g.dim);
    }
    return f;
}

PolyMorphism identity_morphism(const Polygraph& p) {
    std::map<Id, CellTable> im;
    for (const auto& g : p.generators()) im[g.id] = p.atom(g.id);
    return make_morphism(p, p, im);
}

PolyMorphism inclusion_morphism(const Polygraph& sub, const Polygraph& super) {
    std::map<Id, CellTable> im;
    for (const auto& g : sub.generators()) im[g.id] = super.atom(g.id);
    return make_morphism(sub, super, im);
}

CellTable apply(const PolyMorphism& f, const CellTable& x) { return apply_assignment(f.assignment, x); }

PolyMorphism compose_morphisms(const PolyMorphism& f, const PolyMorphism& g) {
    std::map<Id, CellTable> im;
    for (const auto& [id, c] : f.assignment) im[id] = apply(g, c);
    return make_morphism(f.source, g.target, im);
}

Report check_morphism(const PolyMorphism& f) {
    Report rep;
    for (const auto& g : f.source.generators()) {
        auto it = f.assignment.find(g.id);
        if (it == f.assignment.end()) {
            rep.fail(g.id + ": no image");
            continue;
        }
        const CellTable& im = it->second;
        if (im.n != g.dim) {
            rep.fail(g.id + ": image has dimension " + std::to_string(im.n));
            continue;
        }
        Report cr = f.target.check_cell(im);
        if (!cr.ok()) {
            rep.merge(cr, g.id + ": image ");
            continue;
        }
        if (g.dim == 0) continue;
        try {
            if (apply(f, g.src) != cell_source(im, g.dim - 1)) rep.fail(g.id + ": source mismatch");
            if (apply(f, g.tgt) != cell_target(im, g.dim - 1)) rep.fail(g.id + ": target mismatch");
        } catch (const std::exception& e) {
            rep.fail(g.id + ": " + e.what());
        }
    }
    return rep;
}

bool is_polygraphic(const PolyMorphism& f) {
    for (const auto& g : f.source.generators()) {
        const CellTable& im = f.assignment.at(g.id);
        const auto& t = im.top().terms;
        if (t.size() != 1 || t.begin()->second != 1) return false;
        const Id& b = t.begin()->first;
        if (!f.target.has(b) || f.target.atom(b) != im) return false;
    }
    return true;
}

bool same_morphism(const PolyMorphism& f, const PolyMorphism& g) {
    return same_complex(f.source.complex(), g.source.complex()) && same_complex(f.target.complex(), g.target.complex()) &&
           f.assignment == g.assignment;
}

// ---------------------------------------------------------------- standard shapes

static Id globe_id(int k, char sign) { return "e" + std::to_string(k) + sign; }

static DirComplex globe_complex(int n, bool with_top) {
    DirComplex c;
    for (int k = 0; k < n; ++k) {
        for (char s : {'-', '+'}) {
            if (k == 0)
                c.add(globe_id(0, s), 0);
            else
                c.add(globe_id(k, s), k, Chain::of(k - 1, globe_id(k - 1, '-')), Chain::of(k - 1, globe_id(k - 1, '+')));
        }
    }
    if (with_top) {
        Id top = "e" + std::to_string(n);
        if (n == 0)
            c.add(top, 0);
        else
            c.add(top, n, Chain::of(n - 1, globe_id(n - 1, '-')), Chain::of(n - 1, globe_id(n - 1, '+')));
    }
    return c;
}

Polygraph globe(int n) {
    if (n < 0) throw std::invalid_argument("globe: negative dimension");
    return Polygraph::from_complex("D_" + std::to_string(n), globe_complex(n, true));
}

Polygraph sphere(int n) {
    if (n < 0) throw std::invalid_argument("sphere: negative dimension");
    return Polygraph::from_complex("dD_" + std::to_string(n), globe_complex(n, false));
}

PolyMorphism sphere_inclusion(int n) { return inclusion_morphism(sphere(n), globe(n)); }

Polygraph point() { return globe(0); }

Polygraph empty_polygraph() { return Polygraph::from_generators("empty", {}); }

Polygraph interval_polygraph() {
    auto ren = [](const Id& id) -> Id {
        if (id == "e0-") return "a0-";
        if (id == "e0+") return "a0+";
        return "a";
    };
    return Polygraph::from_complex("I", rename_complex(globe_complex(1, true), ren));
}

CellTable suspend_cell(const CellTable& x) {
    CellTable r;
    r.n = x.n + 1;
    r.neg.push_back(Chain::of(0, kSuspensionMinus));
    r.pos.push_back(Chain::of(0, kSuspensionPlus));
    for (int j = 0; j <= x.n; ++j) {
        Chain a = rename_chain(x.neg[j], suspension_id), b = rename_chain(x.pos[j], suspension_id);
        a.dim = b.dim = j + 1;
        r.neg.push_back(a);
        r.pos.push_back(b);
    }
    return r;
}

Polygraph suspend(const Polygraph& p, int n) {
    if (n < 0) throw std::invalid_argument("suspend: negative count");
    Polygraph cur = p;
    for (int i = 0; i < n; ++i) {
        std::vector<Generator> gens{{kSuspensionMinus, 0, {}, {}}, {kSuspensionPlus, 0, {}, {}}};
        for (const auto& g : cur.generators()) {
            Generator s{suspension_id(g.id), g.dim + 1, {}, {}};
            if (g.dim == 0) {
                s.src = point_cell(kSuspensionMinus);
                s.tgt = point_cell(kSuspensionPlus);
            } else {
                s.src = suspend_cell(g.src);
                s.tgt = suspend_cell(g.tgt);
            }
            gens.push_back(s);
        }
        cur = Polygraph::from_generators("S" + cur.name, gens);
    }
    return cur;
}

std::set<Id> generator_support(const CellTable& x, int d) { return cell_support(x, d); }

// ---------------------------------------------------------------- colimits

Polygraph pushout_attach(const Polygraph& base, const std::vector<Attachment>& cells) {
    std::vector<Generator> gens = base.generators();
    for (const auto& a : cells) {
        Report r = check_morphism(a.boundary);
        if (!r.ok()) throw std::invalid_argument("attachment " + a.id + ": " + r.issues.front());
        int n = a.boundary.source.max_dim() + 1;
        // sphere(n) has top generators e{n-1}-/+; sphere(0) is empty
        Generator g{a.id, n, {}, {}};
        if (n > 0) {
            g.src = a.boundary.assignment.at(globe_id(n - 1, '-'));
            g.tgt = a.boundary.assignment.at(globe_id(n - 1, '+'));
        }
        gens.push_back(g);
    }
    return Polygraph::from_generators(base.name, gens);
}

Polygraph pushout_attach(const Polygraph& base, const std::vector<PolyMorphism>& maps) {
    std::vector<Attachment> cells;
    std::set<Id> used;
    int next = 0;
    for (const auto& m : maps) {
        Id id;
        do id = "c" + std::to_string(next++);
        while (base.has(id) || used.count(id));
        used.insert(id);
        cells.push_back({id, m});
    }
    return pushout_attach(base, cells);
}

Extension pushout_extend(const Polygraph& base, const Polygraph& ext, const std::set<Id>& sub,
                         const std::map<Id, CellTable>& glue, const std::function<Id(const Id&)>& rename) {
    Extension out;
    std::vector<Generator> gens = base.generators();
    for (const auto& g : ext.generators()) {
        if (sub.count(g.id)) {
            auto it = glue.find(g.id);
            if (it == glue.end()) throw std::invalid_argument("pushout: no glue image for " + g.id);
            out.ext_to_result[g.id] = pad_to(it->second, g.dim);
            continue;
        }
        Generator h{rename(g.id), g.dim, {}, {}};
        if (g.dim > 0) {
            h.src = apply_assignment(out.ext_to_result, g.src);
            h.tgt = apply_assignment(out.ext_to_result, g.tgt);
        }
        out.ext_to_result[g.id] = atom_from(h.id, h.dim, h.src, h.tgt);
        gens.push_back(h);
    }
    out.result = Polygraph::from_generators(base.name, gens);
    return out;
}

std::pair<Polygraph, PolyMorphism> collapse_generator(const Polygraph& p, const Id& gid) {
    const Generator& g = p.gen(gid);
    if (g.dim != 1) throw std::invalid_argument("collapse: " + gid + " is not a 1-generator");
    Id u = g.src.top().terms.begin()->first, v = g.tgt.top().terms.begin()->first;
    if (u == v) throw std::invalid_argument("collapse: " + gid + " is an endo-arrow");
    std::map<Id, CellTable> images;
    std::vector<Generator> gens;
    for (const auto& h : p.generators()) {
        if (h.id == v) {
            images[h.id] = point_cell(u);
        } else if (h.id == gid) {
            images[h.id] = identity(point_cell(u));
        } else {
            Generator k{h.id, h.dim, {}, {}};
            if (h.dim > 0) {
                k.src = apply_assignment(images, h.src);
                k.tgt = apply_assignment(images, h.tgt);
            }
            images[h.id] = atom_from(k.id, k.dim, k.src, k.tgt);
            gens.push_back(k);
        }
    }
    Polygraph q = Polygraph::from_generators(p.name + "/" + gid, gens);
    return {q, make_morphism(p, q, images)};
}

Id coproduct_id(std::size_t index, const Id& id) { return std::to_string(index) + "." + id; }

Polygraph coproduct(const std::vector<Polygraph>& ps) {
    std::vector<Generator> gens;
    std::string name;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        auto ren = [i](const Id& id) { return coproduct_id(i, id); };
        for (const auto& g : ps[i].generators()) {
            Generator h{ren(g.id), g.dim, {}, {}};
            if (g.dim > 0) {
                h.src = rename_cell(g.src, ren);
                h.tgt = rename_cell(g.tgt, ren);
            }
            gens.push_back(h);
        }
        name += (i ? "+" : "") + ps[i].name;
    }
    return Polygraph::from_generators(name.empty() ? "empty" : name, gens);
}

bool is_closed_subset(const Polygraph& p, const std::set<Id>& ids) {
    for (const auto& id : ids) {
        if (!p.has(id)) return false;
        const auto& g = p.gen(id);
        if (g.dim == 0) continue;
        for (const CellTable* b : {&g.src, &g.tgt})
            for (int k = 0; k <= b->n; ++k)
                for (const auto& e : cell_support(*b, k))
                    if (!ids.count(e)) return false;
    }
    return true;
}

Polygraph sub_polygraph(const Polygraph& p, const std::set<Id>& ids, std::string name) {
    if (!is_closed_subset(p, ids)) throw std::invalid_argument("sub-polygraph: generator set not closed under boundaries");
    std::vector<Generator> gens;
    for (const auto& g : p.generators())
        if (ids.count(g.id)) gens.push_back(g);
    return Polygraph::from_generators(name.empty() ? p.name : name, gens);
}

Polygraph remove_generators(const Polygraph& p, const std::set<Id>& ids) {
    std::set<Id> keep;
    for (const auto& g : p.generators())
        if (!ids.count(g.id)) keep.insert(g.id);
    return sub_polygraph(p, keep);
}

// ---------------------------------------------------------------- isomorphism

namespace {

struct IsoSearch {
    const Polygraph& a;
    const Polygraph& b;
    const std::function<bool(const Id&, const Id&)>& allowed;
    std::vector<const Generator*> order;
    std::map<Id, Id> map;
    std::set<Id> used;

    bool fits(const Generator& g, const Generator& h) const {
        if (g.dim != h.dim) return false;
        if (allowed && !allowed(g.id, h.id)) return false;
        if (g.dim == 0) return true;
        auto ren = [&](const Id& id) { return map.at(id); };
        return rename_cell(g.src, ren) == h.src && rename_cell(g.tgt, ren) == h.tgt;
    }

    bool run(std::size_t i) {
        if (i == order.size()) return true;
        const Generator& g = *order[i];
        for (const auto& h : b.generators()) {
            if (used.count(h.id) || !fits(g, h)) continue;
            map[g.id] = h.id;
            used.insert(h.id);
            if (run(i + 1)) return true;
            map.erase(g.id);
            used.erase(h.id);
        }
        return false;
    }
};

}  // namespace

std::optional<std::map<Id, Id>> find_isomorphism(const Polygraph& a, const Polygraph& b,
                                                 const std::function<bool(const Id&, const Id&)>& allowed) {
    if (a.counts() != b.counts()) return std::nullopt;
    IsoSearch s{a, b, allowed, {}, {}, {}};
    for (const auto& g : a.generators()) s.order.push_back(&g);
    if (!s.run(0)) return std::nullopt;
    return s.map;
}

}  // namespace graycat

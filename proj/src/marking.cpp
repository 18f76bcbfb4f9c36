#include "graycat/marking.hpp"

#include <array>
#include <deque>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "graycat/catalog.hpp"

namespace graycat {

std::string m_str(int m) { return m == kInf ? "inf" : std::to_string(m); }

int parse_m(const std::string& s) {
    if (s == "inf" || s == "oo") return kInf;
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size() || v < 0) throw std::invalid_argument("bad marking threshold: " + s);
    return v;
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Marked: return "Marked";
        case Verdict::Unmarked: return "Unmarked";
        case Verdict::Unknown: return "Unknown";
    }
    return "?";
}

MarkedCat flat(const Polygraph& p, int m) { return {p, {m, {}, {}}}; }

MarkedCat sharp(const Polygraph& p, int m) {
    MarkedCat c{p, {m, {}, {}}};
    for (const auto& g : p.generators())
        if (g.dim >= 1) c.marking.generator_seeds.insert(g.id);
    return c;
}

std::set<Id> marked_generators(const MarkedCat& c) {
    std::set<Id> r;
    for (const auto& g : c.base.generators())
        if (g.dim >= 1 && (c.marking.generator_seeds.count(g.id) || g.dim > c.marking.m)) r.insert(g.id);
    return r;
}

Report validate_marking(const MarkedCat& c) {
    Report rep;
    for (const auto& id : c.marking.generator_seeds) {
        if (!c.base.has(id))
            rep.fail("seed " + id + " is not a generator");
        else if (c.base.dim_of(id) < 1)
            rep.fail("seed " + id + " has dimension 0");
    }
    for (const auto& x : c.marking.cell_seeds) {
        if (x.n < 1) rep.fail("cell seed " + x.str() + " has dimension 0");
        rep.merge(c.base.check_cell(x), "cell seed " + x.str() + ": ");
    }
    return rep;
}

bool in_natural_span(const Chain& t, const std::vector<Chain>& vectors) {
    std::vector<Chain> vs;
    for (const auto& v : vectors)
        if (!v.zero()) vs.push_back(v);
    std::unordered_map<std::string, bool> memo;
    std::function<bool(const Chain&)> go = [&](const Chain& rem) -> bool {
        if (rem.zero()) return true;
        if (!rem.positive()) return false;
        std::string key = rem.str();
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        const Id& first = rem.terms.begin()->first;
        bool ok = false;
        for (const auto& v : vs) {
            if (v.coef(first) == 0 || !v.leq(rem)) continue;
            if (go(rem - v)) {
                ok = true;
                break;
            }
        }
        memo[key] = ok;
        return ok;
    };
    return go(t);
}

namespace {

// Closure of a pool of n-cells under #_k (k < n), keeping only cells accepted by keep.
struct ComposeClosure {
    int n;
    std::size_t budget;
    std::function<bool(const CellTable&)> keep;
    std::vector<CellTable> cells;
    std::vector<std::string> leaf;           // nonempty for leaves
    std::vector<std::array<int, 3>> parent;  // (a, b, k) for composites
    std::unordered_map<std::string, int> index;
    std::deque<int> queue;
    bool exhausted = false;

    int add(const CellTable& x, const std::string& name, std::array<int, 3> par) {
        if (!keep(x)) return -1;
        std::string key = x.str();
        if (auto it = index.find(key); it != index.end()) return it->second;
        if (cells.size() >= budget) {
            exhausted = true;
            return -1;
        }
        int i = static_cast<int>(cells.size());
        index[key] = i;
        cells.push_back(x);
        leaf.push_back(name);
        parent.push_back(par);
        queue.push_back(i);
        return i;
    }

    void saturate(const std::function<bool()>& done) {
        std::vector<std::unordered_map<std::string, std::vector<int>>> by_src(n), by_tgt(n);
        while (!queue.empty() && !exhausted) {
            if (done()) return;
            int z = queue.front();
            queue.pop_front();
            const CellTable x = cells[z];
            for (int k = 0; k < n; ++k) {
                by_src[k][cell_source(x, k).str()].push_back(z);
                by_tgt[k][cell_target(x, k).str()].push_back(z);
            }
            for (int k = 0; k < n && !exhausted; ++k) {
                auto right = by_src[k][cell_target(x, k).str()];
                for (int y : right) {
                    add(compose(x, cells[y], k), "", {z, y, k});
                }
                auto left = by_tgt[k][cell_source(x, k).str()];
                for (int w : left) add(compose(cells[w], x, k), "", {w, z, k});
            }
        }
    }

    std::string expression(int i) const {
        if (!leaf[i].empty()) return leaf[i];
        const auto& p = parent[i];
        return "(" + expression(p[0]) + " #" + std::to_string(p[2]) + " " + expression(p[1]) + ")";
    }
};

Membership witness_search(const MarkedCat& c, const CellTable& x, std::size_t budget) {
    const int n = x.n;
    const Chain bound = x.top();
    ComposeClosure cl{n, budget, [&](const CellTable& y) { return y.top().leq(bound); }, {}, {}, {}, {}, {}, false};
    try {
        CellCatalog lower(c.base, budget, n - 1);
        for (int i : lower.of_dim(n - 1)) cl.add(identity(lower.cells()[i]), "1(" + lower.expression(i) + ")", {-1, -1, -1});
    } catch (const BudgetExceeded&) {
        return {Verdict::Unknown, "lower cells exceed budget"};
    }
    for (const auto& g : marked_generators(c))
        if (c.base.dim_of(g) == n) cl.add(c.base.atom(g), g, {-1, -1, -1});
    for (std::size_t i = 0; i < c.marking.cell_seeds.size(); ++i) {
        const auto& s = c.marking.cell_seeds[i];
        if (s.n == n) cl.add(s, "seed" + std::to_string(i), {-1, -1, -1});
    }
    const std::string key = x.str();
    cl.saturate([&] { return cl.index.count(key) > 0; });
    if (auto it = cl.index.find(key); it != cl.index.end()) return {Verdict::Marked, cl.expression(it->second)};
    if (cl.exhausted) return {Verdict::Unknown, "witness search exceeded budget"};
    return {Verdict::Unmarked, "no composite of marked cells and identities equals the cell"};
}

}  // namespace

Membership closure_contains(const MarkedCat& c, const CellTable& x, std::size_t budget) {
    const int n = x.n;
    if (n == 0) return {Verdict::Unmarked, "0-cells are never marked"};
    if (n > c.marking.m) return {Verdict::Marked, "dimension above m"};
    if (x.top().zero()) return {Verdict::Marked, "identity"};
    std::set<Id> marked = marked_generators(c);
    std::set<Id> unmarked;
    for (const auto& g : generator_support(x, n))
        if (!marked.count(g)) unmarked.insert(g);
    if (unmarked.empty()) {
        std::string w;
        for (const auto& g : generator_support(x, n)) w += (w.empty() ? "" : ",") + g;
        return {Verdict::Marked, "composite of marked generators {" + w + "} and identities"};
    }
    if (c.marking.cell_seeds.empty()) return {Verdict::Unmarked, "generator " + *unmarked.begin() + " is not marked"};
    std::vector<Chain> span;
    for (const auto& s : c.marking.cell_seeds)
        if (s.n == n) span.push_back(s.top());
    for (const auto& g : marked)
        if (c.base.dim_of(g) == n) span.push_back(Chain::of(n, g));
    if (!in_natural_span(x.top(), span)) return {Verdict::Unmarked, "top chain outside the natural span of marked tops"};
    return witness_search(c, x, budget);
}

void add_seed(Marking& mk, const Polygraph& base, const CellTable& x) {
    if (x.n == 0 || x.n > mk.m || x.top().zero()) return;
    const auto& t = x.top().terms;
    if (t.size() == 1 && t.begin()->second == 1) {
        const Id& g = t.begin()->first;
        if (base.has(g) && base.atom(g) == x) {
            mk.generator_seeds.insert(g);
            return;
        }
    }
    for (const auto& s : mk.cell_seeds)
        if (s == x) return;
    mk.cell_seeds.push_back(x);
}

// ---------------------------------------------------------------- colimits

static void push_seeds(Marking& out, const Polygraph& target, const MarkedCat& src,
                       const std::function<CellTable(const CellTable&)>& push) {
    for (const auto& g : src.marking.generator_seeds) add_seed(out, target, push(src.base.atom(g)));
    for (const auto& s : src.marking.cell_seeds) add_seed(out, target, push(s));
}

MarkedCat marked_coproduct(const std::vector<MarkedCat>& parts) {
    std::vector<Polygraph> ps;
    int m = parts.empty() ? kInf : parts.front().marking.m;
    for (const auto& p : parts) {
        if (p.marking.m != m) throw std::invalid_argument("coproduct: marking thresholds differ");
        ps.push_back(p.base);
    }
    MarkedCat out{coproduct(ps), {m, {}, {}}};
    for (std::size_t i = 0; i < parts.size(); ++i) {
        auto ren = [i](const Id& id) { return coproduct_id(i, id); };
        push_seeds(out.marking, out.base, parts[i], [&](const CellTable& x) { return rename_cell(x, ren); });
    }
    return out;
}

MarkedExtension marked_pushout_extend(const MarkedCat& base, const MarkedCat& ext, const std::set<Id>& sub,
                                      const std::map<Id, CellTable>& glue, const std::function<Id(const Id&)>& rename) {
    if (base.marking.m != ext.marking.m) throw std::invalid_argument("pushout: marking thresholds differ");
    Extension e = pushout_extend(base.base, ext.base, sub, glue, rename);
    MarkedExtension out{{e.result, base.marking}, e.ext_to_result};
    push_seeds(out.result.marking, e.result, ext, [&](const CellTable& x) { return apply_assignment(e.ext_to_result, x); });
    return out;
}

std::pair<MarkedCat, PolyMorphism> marked_collapse(const MarkedCat& c, const Id& g) {
    auto [q, f] = collapse_generator(c.base, g);
    MarkedCat out{q, {c.marking.m, {}, {}}};
    push_seeds(out.marking, q, c, [&](const CellTable& x) { return apply(f, x); });
    return {out, f};
}

MarkedCat mark_cells(const MarkedCat& c, const std::vector<CellTable>& cells) {
    MarkedCat out = c;
    for (const auto& x : cells) {
        Report r = c.base.check_cell(x);
        if (!r.ok()) throw std::invalid_argument("mark_cells: " + r.issues.front());
        add_seed(out.marking, c.base, x);
    }
    return out;
}

MarkedCat marked_colimit(const ColimitDiagram& d) {
    switch (d.kind) {
        case ColimitDiagram::Coproduct:
            return marked_coproduct(d.parts);
        case ColimitDiagram::Extend:
            if (d.parts.size() != 2 || !d.rename) break;
            return marked_pushout_extend(d.parts[0], d.parts[1], d.sub, d.glue, d.rename).result;
        case ColimitDiagram::Collapse:
            if (d.parts.size() != 1) break;
            return marked_collapse(d.parts[0], d.collapsed).first;
        case ColimitDiagram::Mark:
            if (d.parts.size() != 1) break;
            return mark_cells(d.parts[0], d.cells);
    }
    throw std::invalid_argument("unsupported colimit form");
}

// ---------------------------------------------------------------- comparison

MarkingComparison marking_eq(const Marking& a, const Marking& b, const Polygraph& base, std::size_t budget,
                             std::uint64_t seed) {
    std::vector<CellTable> probes;
    for (const auto& g : base.generators())
        if (g.dim >= 1) probes.push_back(base.atom(g.id));
    for (const Marking* mk : {&a, &b}) {
        for (const auto& g : mk->generator_seeds)
            if (base.has(g)) probes.push_back(base.atom(g));
        for (const auto& s : mk->cell_seeds) probes.push_back(s);
    }
    try {
        CellCatalog cat(base, budget);
        for (const auto& x : cat.cells())
            if (x.n >= 1) probes.push_back(x);
    } catch (const BudgetExceeded&) {
        // random composites from atoms and identities
        std::mt19937_64 rng(seed);
        std::vector<CellTable> pool;
        for (const auto& g : base.generators()) {
            CellTable x = base.atom(g.id);
            for (int n = x.n; n <= base.max_dim(); ++n) {
                pool.push_back(x);
                x = identity(x);
            }
        }
        for (std::size_t step = 0; step < budget && !pool.empty(); ++step) {
            const auto& x = pool[rng() % pool.size()];
            const auto& y = pool[rng() % pool.size()];
            int n = std::max(x.n, y.n);
            if (n == 0) continue;
            int k = static_cast<int>(rng() % n);
            if (!composable(x, y, k)) continue;
            CellTable z = compose(x, y, k);
            pool.push_back(z);
            probes.push_back(z);
        }
    }
    MarkedCat ca{base, a}, cb{base, b};
    bool unknown = false;
    for (const auto& x : probes) {
        Verdict va = closure_contains(ca, x, budget).verdict, vb = closure_contains(cb, x, budget).verdict;
        if (va == Verdict::Unknown || vb == Verdict::Unknown) {
            unknown = true;
            continue;
        }
        if (va != vb)
            return {MarkingOrder::Differ, x, "first: " + verdict_name(va) + ", second: " + verdict_name(vb)};
    }
    if (unknown) return {MarkingOrder::Unknown, {}, "some probes were undecided"};
    return {MarkingOrder::Equal, {}, std::to_string(probes.size()) + " probes agree"};
}

}  // namespace graycat

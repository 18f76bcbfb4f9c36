#include "graycat/monoidal.hpp"

#include <memory>

namespace graycat {

static void require_loop_free(const Polygraph& p, const char* what) {
    if (!p.loop_free()) throw std::invalid_argument(std::string(what) + ": " + p.name + " is not loop-free");
}

Polygraph tensor_polygraph(const Polygraph& a, const Polygraph& b) {
    require_loop_free(a, "tensor");
    require_loop_free(b, "tensor");
    return Polygraph::from_complex("(" + a.name + "*" + b.name + ")", tensor_complex(a.complex(), b.complex()));
}

Polygraph join_polygraph(const Polygraph& a, const Polygraph& b) {
    require_loop_free(a, "join");
    require_loop_free(b, "join");
    for (const auto& g : a.generators())
        if (b.has(g.id)) throw std::invalid_argument("join: generator " + g.id + " occurs in both factors");
    return Polygraph::from_complex("(" + a.name + "&" + b.name + ")", join_complex(a.complex(), b.complex()));
}

static void require_special(const MarkedCat& c, const char* what) {
    if (!c.marking.cell_seeds.empty())
        throw std::invalid_argument(std::string(what) + ": factor carries cell seeds; only generator seeds are supported");
}

MarkedCat marked_tensor(const MarkedCat& a, const MarkedCat& b, TensorMode mode) {
    if (a.marking.m != b.marking.m) throw std::invalid_argument("tensor: marking thresholds differ");
    require_special(a, "tensor");
    require_special(b, "tensor");
    MarkedCat out{tensor_polygraph(a.base, b.base), {a.marking.m, {}, {}}};
    auto ma = marked_generators(a), mb = marked_generators(b);
    for (const auto& g : a.base.generators())
        for (const auto& h : b.base.generators()) {
            bool seed = ma.count(g.id) || mb.count(h.id);
            if (mode == TensorMode::Pseudo && g.dim > 0 && h.dim > 0) seed = true;
            if (seed) out.marking.generator_seeds.insert(tensor_id(g.id, h.id));
        }
    return out;
}

MarkedCat lax_tensor(const MarkedCat& a, const MarkedCat& b) { return marked_tensor(a, b, TensorMode::Lax); }
MarkedCat pseudo_tensor(const MarkedCat& a, const MarkedCat& b) { return marked_tensor(a, b, TensorMode::Pseudo); }

MarkedCat marked_join(const MarkedCat& a, const MarkedCat& b) {
    if (a.marking.m != b.marking.m) throw std::invalid_argument("join: marking thresholds differ");
    require_special(a, "join");
    require_special(b, "join");
    MarkedCat out{join_polygraph(a.base, b.base), {a.marking.m, {}, {}}};
    auto ma = marked_generators(a), mb = marked_generators(b);
    for (const auto& g : ma) out.marking.generator_seeds.insert(g);
    for (const auto& g : mb) out.marking.generator_seeds.insert(g);
    for (const auto& g : a.base.generators())
        for (const auto& h : b.base.generators())
            if (ma.count(g.id) || mb.count(h.id)) out.marking.generator_seeds.insert(join_id(g.id, h.id));
    return out;
}

// ---------------------------------------------------------------- laws

std::function<Id(const Id&)> reassociate(const Polygraph& a, const Polygraph& b, const Polygraph& c) {
    auto table = std::make_shared<std::map<Id, Id>>();
    for (const auto& x : a.generators())
        for (const auto& y : b.generators())
            for (const auto& z : c.generators())
                (*table)[tensor_id(tensor_id(x.id, y.id), z.id)] = tensor_id(x.id, tensor_id(y.id, z.id));
    return [table](const Id& id) { return table->at(id); };
}

static Marking rename_marking(const Marking& mk, const std::function<Id(const Id&)>& f) {
    Marking r{mk.m, {}, {}};
    for (const auto& g : mk.generator_seeds) r.generator_seeds.insert(f(g));
    for (const auto& s : mk.cell_seeds) r.cell_seeds.push_back(rename_cell(s, f));
    return r;
}

static std::string mode_name(TensorMode m) { return m == TensorMode::Lax ? "lax" : "pseudo"; }

static std::string describe(const MarkedCat& c) {
    std::string s = c.base.name + "{";
    bool first = true;
    for (const auto& g : c.marking.generator_seeds) {
        s += (first ? "" : ",") + g;
        first = false;
    }
    return s + "}";
}

static CaseResult compare(const std::string& name, const MarkedCat& left, const MarkedCat& right,
                          const std::function<Id(const Id&)>& ren, std::size_t budget) {
    CaseResult r{name, false, ""};
    DirComplex moved = rename_complex(left.base.complex(), ren);
    if (!same_complex(moved, right.base.complex())) {
        r.detail = "underlying complexes differ";
        return r;
    }
    MarkingComparison cmp = marking_eq(rename_marking(left.marking, ren), right.marking, right.base, budget);
    r.pass = cmp.result == MarkingOrder::Equal;
    r.detail = r.pass ? cmp.detail : (cmp.result == MarkingOrder::Differ ? "differ at " + cmp.witness.str() : cmp.detail);
    return r;
}

CaseResult check_associativity(const MarkedCat& a, const MarkedCat& b, const MarkedCat& c, TensorMode mode,
                               std::size_t budget) {
    MarkedCat left = marked_tensor(marked_tensor(a, b, mode), c, mode);
    MarkedCat right = marked_tensor(a, marked_tensor(b, c, mode), mode);
    return compare("assoc " + mode_name(mode) + " " + describe(a) + " " + describe(b) + " " + describe(c), left, right,
                   reassociate(a.base, b.base, c.base), budget);
}

CaseResult check_units(const MarkedCat& x, TensorMode mode, std::size_t budget) {
    MarkedCat unit = flat(point(), x.marking.m);
    const Id pt = point().generators().front().id;
    auto strip_left = [pt](const Id& id) { return id.substr(pt.size() + 2, id.size() - pt.size() - 3); };
    auto strip_right = [pt](const Id& id) { return id.substr(1, id.size() - pt.size() - 3); };
    CaseResult l = compare("", marked_tensor(unit, x, mode), x, strip_left, budget);
    CaseResult r = compare("", marked_tensor(x, unit, mode), x, strip_right, budget);
    CaseResult out{"unit " + mode_name(mode) + " " + describe(x), l.pass && r.pass, ""};
    out.detail = "left: " + l.detail + "; right: " + r.detail;
    return out;
}

std::vector<MarkedCat> globe_marking_corpus(int max_dim, int m) {
    std::vector<MarkedCat> out;
    for (int n = 0; n <= max_dim; ++n) {
        Polygraph d = globe(n);
        out.push_back(flat(d, m));
        if (n == 0) continue;
        out.push_back(sharp(d, m));
        for (const auto& g : d.generators()) {
            if (g.dim == 0) continue;
            MarkedCat s = flat(d, m);
            s.marking.generator_seeds.insert(g.id);
            if (s.marking.generator_seeds != sharp(d, m).marking.generator_seeds) out.push_back(s);
        }
    }
    return out;
}

std::vector<CaseResult> assoc_unit_selftest(std::size_t budget) {
    std::vector<CaseResult> out;
    auto corpus = globe_marking_corpus(2);
    for (TensorMode mode : {TensorMode::Lax, TensorMode::Pseudo}) {
        for (const auto& a : corpus)
            for (const auto& b : corpus)
                for (const auto& c : corpus) out.push_back(check_associativity(a, b, c, mode, budget));
        for (const auto& x : corpus) out.push_back(check_units(x, mode, budget));
    }
    return out;
}

}  // namespace graycat

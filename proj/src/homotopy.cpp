#include "graycat/homotopy.hpp"

#include <algorithm>
#include <functional>

#include "graycat/catalog.hpp"

namespace graycat {

// ---------------------------------------------------------------- FiniteCat

std::vector<int> FiniteCat::of_dim(int d) const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
        if (dim[i] == d) out.push_back(i);
    return out;
}

int FiniteCat::source(int x, int k) const {
    while (dim[x] > k) x = src[x];
    return x;
}

int FiniteCat::target(int x, int k) const {
    while (dim[x] > k) x = tgt[x];
    return x;
}

int FiniteCat::pad(int x, int d) const {
    while (x >= 0 && dim[x] < d) x = ident[x];
    return x;
}

int FiniteCat::compose(int x, int y, int k) const {
    const int n = std::max(dim[x], dim[y]);
    if (k < 0 || k >= n) return -1;
    x = pad(x, n);
    y = pad(y, n);
    if (x < 0 || y < 0) return -1;
    if (target(x, k) != source(y, k)) return -1;
    auto it = comp.find({k, x, y});
    return it == comp.end() ? -1 : it->second;
}

bool FiniteCat::is_marked(int x) const {
    return dim[x] >= 1 && (dim[x] > m || marked[x] || unit_of[x] >= 0);
}

int FiniteCat::find(const std::string& cell_name) const {
    for (int i = 0; i < size(); ++i)
        if (names[i] == cell_name) return i;
    return -1;
}

std::vector<int> FiniteCat::cells_between(int u, int v, int d) const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
        if (dim[i] == d && (d == 0 || (src[i] == u && tgt[i] == v))) out.push_back(i);
    return out;
}

// ---------------------------------------------------------------- builder

FiniteCatBuilder::FiniteCatBuilder(std::string name, int bound, int m) {
    if (bound < 0) throw std::invalid_argument("finite category: negative bound");
    c_.name = std::move(name);
    c_.bound = bound;
    c_.m = m;
}

FiniteCatBuilder::FiniteCatBuilder(const FiniteCat& base, int new_bound) : c_(base) {
    if (new_bound < base.bound) throw std::invalid_argument("finite category: cannot lower the bound");
    c_.bound = new_bound;
}

static int push_cell(FiniteCat& c, const std::string& name, int d, int s, int t) {
    c.names.push_back(name);
    c.dim.push_back(d);
    c.src.push_back(s);
    c.tgt.push_back(t);
    c.ident.push_back(-1);
    c.unit_of.push_back(-1);
    c.marked.push_back(false);
    return c.size() - 1;
}

int FiniteCatBuilder::object(const std::string& cell_name) { return push_cell(c_, cell_name, 0, -1, -1); }

int FiniteCatBuilder::cell(const std::string& cell_name, int source, int target) {
    const int d = c_.dim.at(source) + 1;
    if (c_.dim.at(target) + 1 != d) throw std::invalid_argument("finite category: boundary dimensions differ");
    if (d > c_.bound) throw std::invalid_argument("finite category: cell " + cell_name + " above the bound");
    return push_cell(c_, cell_name, d, source, target);
}

int FiniteCatBuilder::identity(int x) {
    if (c_.ident.at(x) >= 0) return c_.ident[x];
    if (c_.dim[x] >= c_.bound) throw std::invalid_argument("finite category: identity above the bound");
    int i = push_cell(c_, "1(" + c_.names[x] + ")", c_.dim[x] + 1, x, x);
    c_.ident[x] = i;
    c_.unit_of[i] = x;
    return i;
}

void FiniteCatBuilder::set(int k, int x, int y, int z) { c_.comp[{k, x, y}] = z; }
void FiniteCatBuilder::mark(int x) { c_.marked.at(x) = true; }

FiniteCat FiniteCatBuilder::finish_unchecked() {
    for (int i = 0; i < c_.size(); ++i)
        if (c_.dim[i] < c_.bound) identity(i);
    for (int n = 1; n <= c_.bound; ++n) {
        auto cells = c_.of_dim(n);
        for (int k = 0; k < n; ++k) {
            std::map<int, std::vector<int>> by_src;
            for (int y : cells) by_src[c_.source(y, k)].push_back(y);
            for (int x : cells)
                for (int y : by_src[c_.target(x, k)]) {
                    if (c_.comp.count({k, x, y})) continue;
                    int z = -1;
                    if (y == c_.pad(c_.target(x, k), n)) {
                        z = x;
                    } else if (x == c_.pad(c_.source(y, k), n)) {
                        z = y;
                    } else if (c_.unit_of[x] >= 0 && c_.unit_of[y] >= 0 && k < n - 1) {
                        auto it = c_.comp.find({k, c_.unit_of[x], c_.unit_of[y]});
                        if (it != c_.comp.end()) z = c_.ident[it->second];
                    }
                    if (z >= 0) c_.comp[{k, x, y}] = z;
                }
        }
    }
    return c_;
}

FiniteCat FiniteCatBuilder::finish() {
    FiniteCat c = finish_unchecked();
    Report r = validate_finite_cat(c);
    if (!r.ok()) throw std::invalid_argument("finite category " + c.name + ": " + r.issues.front());
    return c;
}

// ---------------------------------------------------------------- axioms

Report validate_finite_cat(const FiniteCat& c) {
    Report rep;
    const int N = c.size();
    auto nm = [&](int x) { return c.names[x]; };
    for (int x = 0; x < N; ++x) {
        if (c.dim[x] > c.bound) rep.fail("cell " + nm(x) + " above the bound");
        if (c.dim[x] >= 1 && (c.dim[c.src[x]] != c.dim[x] - 1 || c.dim[c.tgt[x]] != c.dim[x] - 1))
            rep.fail("cell " + nm(x) + " has boundaries of the wrong dimension");
        if (c.dim[x] >= 2 && (c.src[c.src[x]] != c.src[c.tgt[x]] || c.tgt[c.src[x]] != c.tgt[c.tgt[x]]))
            rep.fail("cell " + nm(x) + " is not globular");
        if (c.dim[x] < c.bound) {
            int i = c.ident[x];
            if (i < 0 || c.src[i] != x || c.tgt[i] != x || c.unit_of[i] != x) rep.fail("identity of " + nm(x) + " is wrong");
        }
    }
    if (!rep.ok()) return rep;

    for (int n = 1; n <= c.bound; ++n) {
        auto cells = c.of_dim(n);
        for (int k = 0; k < n; ++k) {
            std::map<int, std::vector<int>> by_src;
            for (int y : cells) by_src[c.source(y, k)].push_back(y);
            for (int x : cells)
                for (int y : by_src[c.target(x, k)]) {
                    auto it = c.comp.find({k, x, y});
                    if (it == c.comp.end()) {
                        rep.fail("composite " + nm(x) + " #" + std::to_string(k) + " " + nm(y) + " is undefined");
                        continue;
                    }
                    int z = it->second;
                    const std::string what = nm(x) + " #" + std::to_string(k) + " " + nm(y);
                    if (c.dim[z] != n) {
                        rep.fail(what + " has the wrong dimension");
                        continue;
                    }
                    if (k == n - 1) {
                        if (c.src[z] != c.src[x] || c.tgt[z] != c.tgt[y]) rep.fail(what + " has wrong boundary");
                    } else {
                        if (c.src[z] != c.compose(c.src[x], c.src[y], k) || c.tgt[z] != c.compose(c.tgt[x], c.tgt[y], k))
                            rep.fail(what + " has wrong boundary");
                    }
                    if (n < c.bound && c.ident[z] != c.compose(c.ident[x], c.ident[y], k))
                        rep.fail("identity does not distribute over " + what);
                }
            for (int x : cells) {
                if (c.compose(x, c.target(x, k), k) != x || c.compose(c.source(x, k), x, k) != x)
                    rep.fail("unit law fails for " + nm(x) + " at level " + std::to_string(k));
            }
        }
        if (!rep.ok()) return rep;
        // associativity
        for (int k = 0; k < n; ++k) {
            std::map<int, std::vector<int>> by_src;
            for (int y : cells) by_src[c.source(y, k)].push_back(y);
            for (int x : cells)
                for (int y : by_src[c.target(x, k)])
                    for (int z : by_src[c.target(y, k)]) {
                        int l = c.compose(c.compose(x, y, k), z, k), r = c.compose(x, c.compose(y, z, k), k);
                        if (l != r) rep.fail("associativity fails for " + nm(x) + ", " + nm(y) + ", " + nm(z));
                    }
        }
        // interchange
        for (int l = 1; l < n; ++l) {
            std::map<int, std::vector<int>> by_src_l;
            for (int y : cells) by_src_l[c.source(y, l)].push_back(y);
            for (int k = 0; k < l; ++k) {
                std::map<int, std::vector<int>> by_src_k;
                for (int y : cells) by_src_k[c.source(y, k)].push_back(y);
                for (int x : cells)
                    for (int x2 : by_src_l[c.target(x, l)])
                        for (int y : by_src_k[c.target(x, k)])
                            for (int y2 : by_src_l[c.target(y, l)]) {
                                if (c.target(x2, k) != c.source(y2, k)) continue;
                                int a = c.compose(c.compose(x, y, k), c.compose(x2, y2, k), l);
                                int b = c.compose(c.compose(x, x2, l), c.compose(y, y2, l), k);
                                if (a != b)
                                    rep.fail("interchange fails for " + nm(x) + ", " + nm(x2) + ", " + nm(y) + ", " + nm(y2));
                            }
            }
        }
        if (!rep.ok()) return rep;
    }
    // marking
    for (int x = 0; x < N; ++x)
        if (c.marked[x] && c.dim[x] == 0) rep.fail("object " + nm(x) + " is marked");
    for (const auto& [key, z] : c.comp) {
        auto [k, x, y] = key;
        if (c.is_marked(x) && c.is_marked(y) && !c.is_marked(z))
            rep.fail("marking not closed: " + nm(x) + " #" + std::to_string(k) + " " + nm(y));
    }
    return rep;
}

FiniteCat pad_bound(const FiniteCat& c, int new_bound) {
    if (new_bound == c.bound) return c;
    return FiniteCatBuilder(c, new_bound).finish_unchecked();
}

void close_marking(FiniteCat& c) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [key, z] : c.comp) {
            auto [k, x, y] = key;
            if (c.is_marked(x) && c.is_marked(y) && !c.is_marked(z)) {
                c.marked[z] = true;
                changed = true;
            }
        }
    }
}

FiniteCat with_marking(const FiniteCat& c, const std::set<int>& marked, int m) {
    FiniteCat out = c;
    out.m = m;
    std::fill(out.marked.begin(), out.marked.end(), false);
    for (int x : marked)
        if (out.dim.at(x) >= 1) out.marked[x] = true;
    close_marking(out);
    return out;
}

std::set<int> marked_set(const FiniteCat& c) {
    std::set<int> out;
    for (int x = 0; x < c.size(); ++x)
        if (c.is_marked(x)) out.insert(x);
    return out;
}

// ---------------------------------------------------------------- conversion

int FiniteCatConversion::index_of(const CellTable& x) const {
    for (std::size_t i = 0; i < cells.size(); ++i)
        if (cells[i] == x) return static_cast<int>(i);
    return -1;
}

static std::string compact(std::string s) {
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    return s;
}

FiniteCatConversion to_finite_cat(const MarkedCat& mc, std::size_t budget, int bound) {
    const Polygraph& p = mc.base;
    if (!p.loop_free()) throw std::invalid_argument("conversion needs a loop-free polygraph");
    if (bound < 0) bound = std::max(p.max_dim(), 0);
    CellCatalog cat(p, budget, bound);
    FiniteCatConversion out;
    FiniteCat& c = out.cat;
    c.name = p.name;
    c.bound = bound;
    c.m = mc.marking.m;
    out.cells = cat.cells();
    std::unordered_map<std::string, int> index;
    for (std::size_t i = 0; i < out.cells.size(); ++i) index[out.cells[i].str()] = static_cast<int>(i);
    auto look = [&](const CellTable& x) {
        auto it = index.find(x.str());
        if (it == index.end()) throw BudgetExceeded("conversion: cell outside the tabulated range");
        return it->second;
    };
    for (std::size_t i = 0; i < out.cells.size(); ++i) {
        const CellTable& x = out.cells[i];
        int s = x.n == 0 ? -1 : look(cell_source(x, x.n - 1)), t = x.n == 0 ? -1 : look(cell_target(x, x.n - 1));
        push_cell(c, compact(cat.expression(static_cast<int>(i))), x.n, s, t);
    }
    for (int i = 0; i < c.size(); ++i) {
        if (c.dim[i] < bound) c.ident[i] = look(identity(out.cells[i]));
        if (c.dim[i] >= 1 && is_identity_cell(out.cells[i])) c.unit_of[i] = look(cell_source(out.cells[i], c.dim[i] - 1));
    }
    for (int n = 1; n <= bound; ++n) {
        auto cells = c.of_dim(n);
        for (int k = 0; k < n; ++k) {
            std::map<int, std::vector<int>> by_src;
            for (int y : cells) by_src[c.source(y, k)].push_back(y);
            for (int x : cells)
                for (int y : by_src[c.target(x, k)]) c.comp[{k, x, y}] = look(compose(out.cells[x], out.cells[y], k));
        }
    }
    for (int i = 0; i < c.size(); ++i) {
        if (c.dim[i] == 0 || c.is_identity(i)) continue;
        Membership mb = closure_contains(mc, out.cells[i], budget);
        if (mb.verdict == Verdict::Unknown) throw BudgetExceeded("conversion: marking undecided for " + c.names[i]);
        c.marked[i] = mb.verdict == Verdict::Marked;
    }
    return out;
}

std::vector<int> finite_functor(const PolyMorphism& f, const FiniteCatConversion& a, const FiniteCatConversion& b) {
    std::vector<int> out;
    for (const auto& x : a.cells) {
        int i = b.index_of(apply(f, x));
        if (i < 0) throw std::invalid_argument("functor image outside the tabulated target");
        out.push_back(i);
    }
    return out;
}

// ---------------------------------------------------------------- functors

Report check_functor(const FiniteCat& a, const FiniteCat& b, const std::vector<int>& f, bool require_marking) {
    Report rep;
    if (static_cast<int>(f.size()) != a.size()) {
        rep.fail("functor has the wrong number of cells");
        return rep;
    }
    if (a.bound != b.bound) rep.fail("bounds differ; pad first");
    for (int x = 0; x < a.size() && rep.ok(); ++x) {
        int y = f[x];
        if (y < 0 || y >= b.size() || b.dim[y] != a.dim[x]) {
            rep.fail("cell " + a.names[x] + " maps to the wrong dimension");
            break;
        }
        if (a.dim[x] >= 1 && (b.src[y] != f[a.src[x]] || b.tgt[y] != f[a.tgt[x]]))
            rep.fail("cell " + a.names[x] + ": boundary not preserved");
        if (a.ident[x] >= 0 && f[a.ident[x]] != b.ident[y]) rep.fail("identity of " + a.names[x] + " not preserved");
        if (require_marking && a.is_marked(x) && !b.is_marked(y)) rep.fail("marked " + a.names[x] + " maps to unmarked");
    }
    if (!rep.ok()) return rep;
    for (const auto& [key, z] : a.comp) {
        auto [k, x, y] = key;
        if (b.compose(f[x], f[y], k) != f[z]) {
            rep.fail("composite " + a.names[x] + " #" + std::to_string(k) + " " + a.names[y] + " not preserved");
            break;
        }
    }
    return rep;
}

std::vector<int> identity_functor(const FiniteCat& c) {
    std::vector<int> f(c.size());
    for (int i = 0; i < c.size(); ++i) f[i] = i;
    return f;
}

std::vector<std::vector<int>> enumerate_functors(const FiniteCat& a, const FiniteCat& b, bool marking_preserving,
                                                 std::size_t limit) {
    if (a.bound != b.bound) throw std::invalid_argument("enumerate_functors: bounds differ; pad first");
    // Non-identity cells in dimension order; identities follow their base cell.
    std::vector<int> order;
    for (int d = 0; d <= a.bound; ++d)
        for (int x : a.of_dim(d))
            if (!a.is_identity(x)) order.push_back(x);
    std::vector<int> pos(a.size(), -1);
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
    auto rank = [&](int x) {
        while (a.is_identity(x)) x = a.unit_of[x];
        return pos[x];
    };
    std::vector<std::vector<std::tuple<int, int, int, int>>> checks(order.size());
    for (const auto& [key, z] : a.comp) {
        auto [k, x, y] = key;
        int r = std::max({rank(x), rank(y), rank(z)});
        checks[r].push_back({k, x, y, z});
    }
    std::vector<std::vector<int>> out;
    std::vector<int> f(a.size(), -1);
    std::function<int(int)> image = [&](int x) -> int {
        if (a.is_identity(x)) {
            int base = image(a.unit_of[x]);
            return base < 0 ? -1 : b.ident[base];
        }
        return f[x];
    };
    std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (out.size() >= limit) return;
        if (i == order.size()) {
            std::vector<int> full(a.size());
            for (int x = 0; x < a.size(); ++x) full[x] = image(x);
            out.push_back(full);
            return;
        }
        const int x = order[i];
        std::vector<int> cands = a.dim[x] == 0 ? b.of_dim(0) : b.cells_between(image(a.src[x]), image(a.tgt[x]), a.dim[x]);
        for (int y : cands) {
            if (marking_preserving && a.is_marked(x) && !b.is_marked(y)) continue;
            f[x] = y;
            bool ok = true;
            for (const auto& [k, p, q, z] : checks[i])
                if (b.compose(image(p), image(q), k) != image(z)) {
                    ok = false;
                    break;
                }
            if (ok) go(i + 1);
        }
        f[x] = -1;
    };
    go(0);
    return out;
}

std::tuple<FiniteCat, FiniteCat, std::vector<int>> pad_functor(const FiniteCat& a, const FiniteCat& b,
                                                              const std::vector<int>& f, int new_bound) {
    FiniteCat pa = pad_bound(a, new_bound), pb = pad_bound(b, new_bound);
    std::vector<int> g(pa.size(), -1);
    for (int x = 0; x < pa.size(); ++x) {
        if (x < static_cast<int>(f.size()))
            g[x] = f[x];
        else
            g[x] = pb.ident[g[pa.unit_of[x]]];
    }
    return {pa, pb, g};
}

// ---------------------------------------------------------------- invertibility

bool has_marked_cell(const FiniteCat& c, int u, int v, int d) {
    if (d > c.bound) return u == v;
    for (int w : c.cells_between(u, v, d))
        if (c.is_marked(w)) return true;
    return false;
}

static int witness(const FiniteCat& c, int u, int v, int d, const std::function<bool(int)>& ok) {
    if (d > c.bound) return u == v ? -1 : -2;
    for (int w : c.cells_between(u, v, d))
        if (ok(w)) return w;
    return -2;
}

std::optional<Inverse> find_inverse(const FiniteCat& c, int a, bool require_marked_inverse) {
    const int d = c.dim.at(a);
    if (d < 1) throw std::invalid_argument("find_inverse: objects have no inverses");
    const int s = c.src[a], t = c.tgt[a];
    const int n = d - 1;
    auto marked = [&](int w) { return c.is_marked(w); };
    for (int b : c.cells_between(t, s, d)) {
        if (require_marked_inverse && !c.is_marked(b)) continue;
        int ab = c.compose(a, b, n), ba = c.compose(b, a, n);
        if (ab < 0 || ba < 0) continue;
        int e = witness(c, ab, c.pad(s, d), d + 1, marked);
        if (e == -2) continue;
        int v = witness(c, ba, c.pad(t, d), d + 1, marked);
        if (v == -2) continue;
        return Inverse{b, e, v};
    }
    return std::nullopt;
}

Report is_prefibrant(const FiniteCat& c) {
    Report rep;
    for (int x = 0; x < c.size(); ++x) {
        if (c.dim[x] < 1 || !c.is_marked(x)) continue;
        if (!find_inverse(c, x, true)) {
            rep.fail("marked cell " + c.names[x] + " has no marked inverse");
            return rep;
        }
    }
    for (int x = 0; x < c.size(); ++x) {
        if (c.dim[x] < 2 || !c.is_marked(x)) continue;
        if (c.is_marked(c.src[x]) && !c.is_marked(c.tgt[x])) {
            rep.fail("marked cell " + c.names[x] + " has marked source but unmarked target");
            return rep;
        }
    }
    return rep;
}

std::set<int> coinductive_invertibles(const FiniteCat& c) {
    std::vector<bool> in(c.size(), false);
    for (int x = 0; x < c.size(); ++x) in[x] = c.dim[x] >= 1;
    auto member = [&](int w) { return in[w]; };
    bool changed = true;
    while (changed) {
        changed = false;
        for (int x = 0; x < c.size(); ++x) {
            if (!in[x]) continue;
            const int d = c.dim[x], s = c.src[x], t = c.tgt[x];
            bool ok = false;
            for (int g : c.cells_between(t, s, d)) {
                int fg = c.compose(x, g, d - 1), gf = c.compose(g, x, d - 1);
                if (fg < 0 || gf < 0) continue;
                if (witness(c, fg, c.pad(s, d), d + 1, member) == -2) continue;
                if (witness(c, gf, c.pad(t, d), d + 1, member) == -2) continue;
                ok = true;
                break;
            }
            if (!ok) {
                in[x] = false;
                changed = true;
            }
        }
    }
    std::set<int> out;
    for (int x = 0; x < c.size(); ++x)
        if (in[x]) out.insert(x);
    return out;
}

Report check_coinductive_properties(const FiniteCat& c, const std::set<int>& cells) {
    Report rep;
    for (int x = 0; x < c.size(); ++x)
        if (c.is_identity(x) && !cells.count(x)) rep.fail("identity " + c.names[x] + " missing");
    for (const auto& [key, z] : c.comp) {
        auto [k, x, y] = key;
        if (cells.count(x) && cells.count(y) && !cells.count(z))
            rep.fail("not closed under " + c.names[x] + " #" + std::to_string(k) + " " + c.names[y]);
    }
    for (int x : cells) {
        if (c.dim[x] < 2) continue;
        if (cells.count(c.src[x]) != cells.count(c.tgt[x]))
            rep.fail("cell " + c.names[x] + " joins a member and a non-member");
    }
    return rep;
}

Report satisfies_2oo6(const FiniteCat& c) {
    Report rep;
    for (int n = 1; n <= c.bound; ++n) {
        auto cells = c.of_dim(n);
        std::map<int, std::vector<int>> by_src;
        for (int y : cells) by_src[c.src[y]].push_back(y);
        for (int f : cells)
            for (int g : by_src[c.tgt[f]])
                for (int h : by_src[c.tgt[g]]) {
                    if (!c.is_marked(c.compose(f, g, n - 1)) || !c.is_marked(c.compose(g, h, n - 1))) continue;
                    if (!c.is_marked(f) || !c.is_marked(g) || !c.is_marked(h)) {
                        rep.fail("triple " + c.names[f] + ", " + c.names[g] + ", " + c.names[h] +
                                 " has marked pair composites but an unmarked member");
                        return rep;
                    }
                }
    }
    return rep;
}

Report marked_iff_invertible(const FiniteCat& c) {
    Report rep;
    for (int x = 0; x < c.size(); ++x) {
        if (c.dim[x] < 1) continue;
        bool inv = find_inverse(c, x).has_value();
        if (inv != c.is_marked(x)) {
            rep.fail("cell " + c.names[x] + (inv ? " is invertible but unmarked" : " is marked but not invertible"));
            return rep;
        }
    }
    return rep;
}

// ---------------------------------------------------------------- equivalences

Report is_equivalence(const FiniteCat& x0, const FiniteCat& y0, const std::vector<int>& f0) {
    Report rep = check_functor(x0, y0, f0);
    if (!rep.ok()) return rep;
    const int top = std::max(x0.bound, y0.bound) + 2;
    auto [x, y, f] = pad_functor(x0, y0, f0, top);
    for (int a = 0; a < x.size(); ++a)
        if (x.dim[a] >= 1 && y.is_marked(f[a]) && !x.is_marked(a)) {
            rep.fail("condition 1: unmarked " + x.names[a] + " maps to marked " + y.names[f[a]]);
            return rep;
        }
    for (int c : y.of_dim(0)) {
        bool ok = false;
        for (int ct : x.of_dim(0))
            if (has_marked_cell(y, f[ct], c, 1)) {
                ok = true;
                break;
            }
        if (!ok) {
            rep.fail("condition 2: object " + y.names[c] + " is not reached up to a marked arrow");
            return rep;
        }
    }
    for (int n = 0; n <= top - 2; ++n) {
        auto cells = x.of_dim(n);
        for (int a : cells)
            for (int b : cells) {
                if (n >= 1 && (x.src[a] != x.src[b] || x.tgt[a] != x.tgt[b])) continue;
                for (int c : y.cells_between(f[a], f[b], n + 1)) {
                    bool ok = false;
                    for (int ct : x.cells_between(a, b, n + 1))
                        if (has_marked_cell(y, f[ct], c, n + 2)) {
                            ok = true;
                            break;
                        }
                    if (!ok) {
                        rep.fail("condition 3: " + y.names[c] + " between images of " + x.names[a] + ", " + x.names[b] +
                                 " has no lift up to a marked arrow");
                        return rep;
                    }
                }
            }
    }
    return rep;
}

Report is_isofibration(const FiniteCat& x0, const FiniteCat& y0, const std::vector<int>& f0) {
    Report rep = check_functor(x0, y0, f0);
    if (!rep.ok()) return rep;
    const int top = std::max(x0.bound, y0.bound) + 1;
    auto [x, y, f] = pad_functor(x0, y0, f0, top);
    for (int n = 0; n < top; ++n)
        for (int a : x.of_dim(n))
            for (int h : y.of_dim(n + 1)) {
                if (y.tgt[h] != f[a] || !y.is_marked(h)) continue;
                bool ok = false;
                for (int hb : x.of_dim(n + 1))
                    if (x.tgt[hb] == a && f[hb] == h && x.is_marked(hb)) {
                        ok = true;
                        break;
                    }
                if (!ok) {
                    rep.fail("no marked lift of " + y.names[h] + " ending at " + x.names[a]);
                    return rep;
                }
            }
    return rep;
}

// ---------------------------------------------------------------- truncations

FiniteCat pi_m(const FiniteCat& c, int m) {
    if (c.m != kInf && m >= c.m) throw std::invalid_argument("pi: target threshold must be below the current one");
    FiniteCat out = c;
    out.m = m;
    for (int x = 0; x < out.size(); ++x)
        if (out.dim[x] == m + 1) out.marked[x] = true;
    close_marking(out);
    return out;
}

FiniteCat iota(const FiniteCat& c, int p) {
    if (p < c.m) throw std::invalid_argument("iota: threshold can only grow");
    FiniteCat out = c;
    for (int x = 0; x < out.size(); ++x)
        if (out.dim[x] > c.m) out.marked[x] = true;
    out.m = p;
    return out;
}

FiniteCat tau_m(const FiniteCat& c, int m, std::vector<int>* back) {
    if (c.m != kInf && m >= c.m) throw std::invalid_argument("tau: target threshold must be below the current one");
    // a cell above m survives when it is marked and both of its boundaries survive
    std::vector<bool> kept(c.size(), false);
    for (int d = 0; d <= c.bound; ++d)
        for (int x : c.of_dim(d))
            kept[x] = d <= m || (c.is_marked(x) && kept[c.src[x]] && kept[c.tgt[x]]);
    std::vector<int> keep, fwd(c.size(), -1);
    for (int x = 0; x < c.size(); ++x)
        if (kept[x]) {
            fwd[x] = static_cast<int>(keep.size());
            keep.push_back(x);
        }
    FiniteCat out;
    out.name = "tau" + std::to_string(m) + "(" + c.name + ")";
    out.bound = c.bound;
    out.m = m;
    for (int x : keep) {
        push_cell(out, c.names[x], c.dim[x], c.dim[x] ? fwd[c.src[x]] : -1, c.dim[x] ? fwd[c.tgt[x]] : -1);
        out.marked.back() = c.dim[x] >= 1 && c.is_marked(x);
    }
    for (std::size_t i = 0; i < keep.size(); ++i) {
        int x = keep[i];
        if (c.ident[x] >= 0) out.ident[i] = fwd[c.ident[x]];
        if (c.unit_of[x] >= 0) out.unit_of[i] = fwd[c.unit_of[x]];
    }
    for (const auto& [key, z] : c.comp) {
        auto [k, x, y] = key;
        if (fwd[x] >= 0 && fwd[y] >= 0) {
            if (fwd[z] < 0) throw std::logic_error("tau: kept cells compose outside the kept set");
            out.comp[{k, fwd[x], fwd[y]}] = fwd[z];
        }
    }
    if (back) *back = keep;
    return out;
}

MarkedCat pi_m(const MarkedCat& c, int m) {
    if (c.marking.m != kInf && m >= c.marking.m) throw std::invalid_argument("pi: target threshold must be below the current one");
    MarkedCat out = c;
    out.marking.m = m;
    return out;
}

MarkedCat iota(const MarkedCat& c, int p) {
    if (p < c.marking.m) throw std::invalid_argument("iota: threshold can only grow");
    MarkedCat out = c;
    for (const auto& g : c.base.generators())
        if (g.dim > c.marking.m && g.dim <= p) out.marking.generator_seeds.insert(g.id);
    out.marking.m = p;
    return out;
}

MarkedCat tau_m(const MarkedCat& c, int m) {
    if (c.marking.m != kInf && m >= c.marking.m) throw std::invalid_argument("tau: target threshold must be below the current one");
    if (!c.marking.cell_seeds.empty()) throw std::invalid_argument("tau: marking has cell seeds; convert to a finite category");
    auto marked = marked_generators(c);
    std::set<Id> ids;
    for (const auto& g : c.base.generators())
        if (g.dim <= m || marked.count(g.id)) ids.insert(g.id);
    if (!is_closed_subset(c.base, ids))
        throw std::invalid_argument("tau: marked generators above the threshold do not form a sub-polygraph");
    for (const auto& id : ids) {
        const Generator& g = c.base.gen(id);
        if (g.dim <= m + 1) continue;
        for (const CellTable* b : {&g.src, &g.tgt})
            if (!is_marked(c, *b)) throw std::invalid_argument("tau: boundary of " + id + " is not marked");
    }
    MarkedCat out{sub_polygraph(c.base, ids, "tau(" + c.base.name + ")"), {m, {}, {}}};
    for (const auto& g : c.marking.generator_seeds)
        if (ids.count(g)) out.marking.generator_seeds.insert(g);
    return out;
}

}  // namespace graycat

#include "graycat/adc.hpp"

#include <algorithm>
#include <sstream>

namespace graycat {

const Id kSuspensionMinus = "S-";
const Id kSuspensionPlus = "S+";

void Report::merge(const Report& other, const std::string& prefix) {
    for (const auto& s : other.issues) issues.push_back(prefix + s);
}

// ---------------------------------------------------------------- Chain

Chain Chain::of(int d, const Id& b, Coef c) {
    Chain r(d);
    r.add(b, c);
    return r;
}

bool Chain::positive() const {
    for (const auto& [b, c] : terms)
        if (c < 0) return false;
    return true;
}

Coef Chain::coef(const Id& b) const {
    auto it = terms.find(b);
    return it == terms.end() ? 0 : it->second;
}

Coef Chain::augmentation() const {
    Coef s = 0;
    for (const auto& [b, c] : terms) s += c;
    return s;
}

std::set<Id> Chain::support() const {
    std::set<Id> s;
    for (const auto& [b, c] : terms) s.insert(b);
    return s;
}

void Chain::add(const Id& b, Coef c) {
    if (c == 0) return;
    auto [it, fresh] = terms.emplace(b, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms.erase(it);
    }
}

Chain& Chain::operator+=(const Chain& o) {
    for (const auto& [b, c] : o.terms) add(b, c);
    return *this;
}

Chain& Chain::operator-=(const Chain& o) {
    for (const auto& [b, c] : o.terms) add(b, -c);
    return *this;
}

Chain Chain::scaled(Coef k) const {
    Chain r(dim);
    if (k == 0) return r;
    for (const auto& [b, c] : terms) r.terms.emplace(b, c * k);
    return r;
}

Chain Chain::positive_part() const {
    Chain r(dim);
    for (const auto& [b, c] : terms)
        if (c > 0) r.terms.emplace(b, c);
    return r;
}

Chain Chain::negative_part() const {
    Chain r(dim);
    for (const auto& [b, c] : terms)
        if (c < 0) r.terms.emplace(b, -c);
    return r;
}

bool Chain::leq(const Chain& o) const {
    for (const auto& [b, c] : terms)
        if (c > o.coef(b)) return false;
    for (const auto& [b, c] : o.terms)
        if (c < 0 && !terms.count(b)) return false;
    return true;
}

std::string Chain::str() const {
    std::string s = "{";
    bool first = true;
    for (const auto& [b, c] : terms) {
        if (!first) s += ",";
        first = false;
        s += b;
        if (c != 1) s += ":" + std::to_string(c);
    }
    return s + "}";
}

Chain rename_chain(const Chain& c, const std::function<Id(const Id&)>& f) {
    Chain r(c.dim);
    for (const auto& [b, k] : c.terms) r.add(f(b), k);
    return r;
}

Chain map_chain(const Chain& c, const std::function<Chain(const Id&)>& img, int target_dim) {
    Chain r(target_dim);
    for (const auto& [b, k] : c.terms) {
        Chain im = img(b);
        if (!im.zero() && im.dim != target_dim)
            throw std::invalid_argument("map_chain: image of " + b + " has wrong dimension");
        r += im.scaled(k);
    }
    return r;
}

// ---------------------------------------------------------------- DirComplex

void DirComplex::add(const Id& id, int dim, Chain neg, Chain pos) {
    if (dim < 0) throw std::invalid_argument("negative dimension for " + id);
    if (elems_.count(id)) throw std::invalid_argument("duplicate basis id " + id);
    if (dim > 0) {
        neg.dim = dim - 1;
        pos.dim = dim - 1;
    } else {
        neg = Chain(0);
        pos = Chain(0);
    }
    if (static_cast<int>(basis_.size()) <= dim) basis_.resize(dim + 1);
    basis_[dim].push_back(id);
    elems_.emplace(id, BasisElem{id, dim, std::move(neg), std::move(pos)});
}

int DirComplex::dim_of(const Id& id) const { return elem(id).dim; }

const BasisElem& DirComplex::elem(const Id& id) const {
    auto it = elems_.find(id);
    if (it == elems_.end()) throw std::out_of_range("unknown basis id " + id);
    return it->second;
}

const std::vector<Id>& DirComplex::basis(int d) const {
    static const std::vector<Id> none;
    if (d < 0 || d >= static_cast<int>(basis_.size())) return none;
    return basis_[d];
}

std::vector<Id> DirComplex::all_ids() const {
    std::vector<Id> r;
    for (const auto& level : basis_) r.insert(r.end(), level.begin(), level.end());
    return r;
}

std::vector<std::size_t> DirComplex::counts() const {
    std::vector<std::size_t> r;
    for (const auto& level : basis_) r.push_back(level.size());
    return r;
}

Chain DirComplex::boundary(const Chain& c) const {
    Chain r(c.dim - 1);
    if (c.dim == 0) return Chain(-1);
    for (const auto& [b, k] : c.terms) {
        const auto& e = elem(b);
        r += e.pos.scaled(k);
        r -= e.neg.scaled(k);
    }
    return r;
}

bool same_complex(const DirComplex& a, const DirComplex& b) {
    if (a.size() != b.size()) return false;
    for (const auto& id : a.all_ids()) {
        if (!b.has(id)) return false;
        const auto& x = a.elem(id);
        const auto& y = b.elem(id);
        if (x.dim != y.dim || x.neg != y.neg || x.pos != y.pos) return false;
    }
    return true;
}

DirComplex rename_complex(const DirComplex& c, const std::function<Id(const Id&)>& f) {
    DirComplex r;
    for (const auto& id : c.all_ids()) {
        const auto& e = c.elem(id);
        r.add(f(id), e.dim, rename_chain(e.neg, f), rename_chain(e.pos, f));
    }
    return r;
}

// ---------------------------------------------------------------- CellTable

std::string CellTable::str() const {
    std::string s = "[";
    for (int k = 0; k < n; ++k) s += neg[k].str() + "/" + pos[k].str() + ";";
    return s + neg[n].str() + "]";
}

CellTable point_cell(const Id& v) {
    CellTable x;
    x.n = 0;
    x.neg = {Chain::of(0, v)};
    x.pos = x.neg;
    return x;
}

CellTable make_cell(const std::vector<Chain>& neg, const std::vector<Chain>& pos) {
    if (neg.empty() || neg.size() != pos.size()) throw std::invalid_argument("make_cell: table size");
    CellTable x;
    x.n = static_cast<int>(neg.size()) - 1;
    x.neg = neg;
    x.pos = pos;
    for (int k = 0; k <= x.n; ++k) {
        x.neg[k].dim = k;
        x.pos[k].dim = k;
    }
    return x;
}

CellTable rename_cell(const CellTable& x, const std::function<Id(const Id&)>& f) {
    CellTable r = x;
    for (int k = 0; k <= x.n; ++k) {
        r.neg[k] = rename_chain(x.neg[k], f);
        r.pos[k] = rename_chain(x.pos[k], f);
    }
    return r;
}

// ---------------------------------------------------------------- validation

Report validate_complex(const DirComplex& c) {
    Report rep;
    for (int d = 0; d <= c.max_dim(); ++d) {
        for (const auto& id : c.basis(d)) {
            const auto& e = c.elem(id);
            if (d == 0) continue;
            bool refs_ok = true;
            for (const Chain* ch : {&e.neg, &e.pos}) {
                if (!ch->positive()) rep.fail(id + ": boundary chain has a negative coefficient");
                for (const auto& [b, k] : ch->terms) {
                    if (!c.has(b)) {
                        rep.fail(id + ": boundary references unknown element " + b);
                        refs_ok = false;
                    } else if (c.dim_of(b) != d - 1) {
                        rep.fail(id + ": boundary element " + b + " has wrong dimension");
                        refs_ok = false;
                    }
                }
            }
            if (!refs_ok) continue;
            Chain bd = e.pos - e.neg;
            if (d == 1) {
                if (bd.augmentation() != 0) rep.fail(id + ": augmentation of boundary is not zero");
            } else if (!c.boundary(bd).zero()) {
                rep.fail(id + ": boundary of boundary is not zero");
            }
        }
    }
    return rep;
}

Report validate_cell(const DirComplex& c, const CellTable& x) {
    Report rep;
    if (x.n < 0 || static_cast<int>(x.neg.size()) != x.n + 1 || static_cast<int>(x.pos.size()) != x.n + 1) {
        rep.fail("malformed table");
        return rep;
    }
    for (int k = 0; k <= x.n; ++k) {
        for (const Chain* ch : {&x.neg[k], &x.pos[k]}) {
            if (ch->dim != k) rep.fail("level " + std::to_string(k) + " has wrong degree");
            if (!ch->positive()) rep.fail("level " + std::to_string(k) + " is not positive");
            for (const auto& [b, coef] : ch->terms) {
                if (!c.has(b) || c.dim_of(b) != k) rep.fail("level " + std::to_string(k) + " mentions " + b);
            }
        }
    }
    if (!rep.ok()) return rep;
    if (x.neg[x.n] != x.pos[x.n]) rep.fail("top tables differ");
    if (x.neg[0].augmentation() != 1 || x.pos[0].augmentation() != 1) rep.fail("augmentation of level 0 is not 1");
    for (int k = 1; k <= x.n; ++k) {
        Chain expect = x.pos[k - 1] - x.neg[k - 1];
        if (c.boundary(x.neg[k]) != expect || c.boundary(x.pos[k]) != expect)
            rep.fail("boundary condition fails at level " + std::to_string(k));
    }
    return rep;
}

CellTable atom(const DirComplex& c, const Id& b) {
    const auto& e = c.elem(b);
    CellTable x;
    x.n = e.dim;
    x.neg.assign(x.n + 1, Chain());
    x.pos.assign(x.n + 1, Chain());
    x.neg[x.n] = Chain::of(x.n, b);
    x.pos[x.n] = x.neg[x.n];
    for (int k = x.n - 1; k >= 0; --k) {
        x.neg[k] = c.boundary_neg(x.neg[k + 1]);
        x.pos[k] = c.boundary_pos(x.pos[k + 1]);
    }
    return x;
}

Report loopfree_report(const DirComplex& c) {
    Report rep = validate_complex(c);
    if (!rep.ok()) return rep;
    for (const auto& id : c.all_ids()) {
        const auto& e = c.elem(id);
        if (e.dim > 0) {
            for (const auto& [b, k] : e.neg.terms)
                if (e.pos.coef(b) != 0) rep.fail(id + ": source and target share " + b);
        }
        CellTable x = atom(c, id);
        Report cr = validate_cell(c, x);
        rep.merge(cr, id + ": atom ");
    }
    if (!rep.ok()) return rep;
    // a < b when a occurs in the negative boundary of b, or b in the positive boundary of a
    std::map<Id, std::vector<Id>> succ;
    for (const auto& id : c.all_ids()) {
        const auto& e = c.elem(id);
        for (const auto& [b, k] : e.neg.terms) succ[b].push_back(id);
        for (const auto& [b, k] : e.pos.terms) succ[id].push_back(b);
    }
    std::map<Id, int> state;
    for (const auto& root : c.all_ids()) {
        if (state[root]) continue;
        std::vector<std::pair<Id, std::size_t>> stack{{root, 0}};
        state[root] = 1;
        while (!stack.empty()) {
            auto& [v, i] = stack.back();
            const auto& out = succ[v];
            if (i < out.size()) {
                const Id w = out[i++];
                if (state[w] == 1) {
                    rep.fail("ordering cycle through " + w);
                    return rep;
                }
                if (state[w] == 0) {
                    state[w] = 1;
                    stack.push_back({w, 0});
                }
            } else {
                state[v] = 2;
                stack.pop_back();
            }
        }
    }
    return rep;
}

bool is_loopfree_unital(const DirComplex& c) { return loopfree_report(c).ok(); }

// ---------------------------------------------------------------- cell operations

CellTable cell_source(const CellTable& x, int k) {
    if (k < 0 || k > x.n) throw std::out_of_range("cell_source: level out of range");
    CellTable r;
    r.n = k;
    r.neg.assign(x.neg.begin(), x.neg.begin() + k + 1);
    r.pos.assign(x.pos.begin(), x.pos.begin() + k + 1);
    r.pos[k] = r.neg[k];
    return r;
}

CellTable cell_target(const CellTable& x, int k) {
    if (k < 0 || k > x.n) throw std::out_of_range("cell_target: level out of range");
    CellTable r;
    r.n = k;
    r.neg.assign(x.neg.begin(), x.neg.begin() + k + 1);
    r.pos.assign(x.pos.begin(), x.pos.begin() + k + 1);
    r.neg[k] = r.pos[k];
    return r;
}

CellTable identity(const CellTable& x) {
    CellTable r = x;
    r.n = x.n + 1;
    r.neg.push_back(Chain(r.n));
    r.pos.push_back(Chain(r.n));
    return r;
}

CellTable pad_to(const CellTable& x, int n) {
    if (n < x.n) throw std::invalid_argument("pad_to: cannot lower dimension");
    CellTable r = x;
    while (r.n < n) r = identity(r);
    return r;
}

static bool boundary_matches(const CellTable& x, const CellTable& y, int k) {
    // target(x, k) == source(y, k) on padded tables
    for (int j = 0; j < k; ++j)
        if (x.neg[j] != y.neg[j] || x.pos[j] != y.pos[j]) return false;
    return x.pos[k] == y.neg[k];
}

bool composable(const CellTable& x, const CellTable& y, int k) {
    int n = std::max(x.n, y.n);
    if (k < 0 || k >= n) return false;
    CellTable X = pad_to(x, n), Y = pad_to(y, n);
    return boundary_matches(X, Y, k);
}

CellTable compose(const CellTable& x, const CellTable& y, int k) {
    int n = std::max(x.n, y.n);
    if (k < 0 || k >= n) throw std::invalid_argument("compose: level out of range");
    CellTable X = pad_to(x, n), Y = pad_to(y, n);
    if (!boundary_matches(X, Y, k)) throw std::invalid_argument("compose: boundary mismatch at level " + std::to_string(k));
    CellTable z;
    z.n = n;
    z.neg.resize(n + 1);
    z.pos.resize(n + 1);
    for (int j = 0; j < k; ++j) {
        z.neg[j] = X.neg[j];
        z.pos[j] = X.pos[j];
    }
    z.neg[k] = X.neg[k];
    z.pos[k] = Y.pos[k];
    for (int j = k + 1; j <= n; ++j) {
        z.neg[j] = X.neg[j] + Y.neg[j];
        z.pos[j] = X.pos[j] + Y.pos[j];
    }
    return z;
}

bool cell_eq(const CellTable& x, const CellTable& y) { return x == y; }

bool is_identity_cell(const CellTable& x) { return x.n > 0 && x.top().zero(); }

std::set<Id> cell_support(const CellTable& x, int d) {
    if (d < 0 || d > x.n) throw std::out_of_range("cell_support: level out of range");
    std::set<Id> s = x.neg[d].support();
    for (const auto& b : x.pos[d].support()) s.insert(b);
    return s;
}

// ---------------------------------------------------------------- constructions

Id tensor_id(const Id& p, const Id& q) { return "(" + p + "*" + q + ")"; }
Id join_id(const Id& p, const Id& q) { return "(" + p + "&" + q + ")"; }
Id suspension_id(const Id& p) { return "S(" + p + ")"; }

static void add_split(DirComplex& out, const Id& id, int dim, const Chain& bd) {
    out.add(id, dim, bd.negative_part(), bd.positive_part());
}

DirComplex tensor_complex(const DirComplex& a, const DirComplex& b) {
    DirComplex r;
    int top = a.max_dim() + b.max_dim();
    if (a.empty() || b.empty()) return r;
    for (int d = 0; d <= top; ++d) {
        for (int i = 0; i <= d; ++i) {
            int j = d - i;
            for (const auto& p : a.basis(i)) {
                for (const auto& q : b.basis(j)) {
                    Chain bd(d - 1);
                    if (i > 0) {
                        const auto& e = a.elem(p);
                        for (const auto& [x, k] : e.pos.terms) bd.add(tensor_id(x, q), k);
                        for (const auto& [x, k] : e.neg.terms) bd.add(tensor_id(x, q), -k);
                    }
                    if (j > 0) {
                        Coef s = (i % 2 == 0) ? 1 : -1;
                        const auto& e = b.elem(q);
                        for (const auto& [y, k] : e.pos.terms) bd.add(tensor_id(p, y), s * k);
                        for (const auto& [y, k] : e.neg.terms) bd.add(tensor_id(p, y), -s * k);
                    }
                    add_split(r, tensor_id(p, q), d, bd);
                }
            }
        }
    }
    return r;
}

DirComplex join_complex(const DirComplex& a, const DirComplex& b) {
    // ∂(p⋆q) = (-1)^{|q|+1} (∂p)⋆q + p⋆(∂q), where a vertex has augmented boundary -[empty]
    // and [empty]⋆q = q, p⋆[empty] = p.
    DirComplex r;
    for (const auto& id : a.all_ids()) {
        const auto& e = a.elem(id);
        r.add(id, e.dim, e.neg, e.pos);
    }
    for (const auto& id : b.all_ids()) {
        const auto& e = b.elem(id);
        r.add(id, e.dim, e.neg, e.pos);
    }
    int top = (a.empty() || b.empty()) ? -1 : a.max_dim() + b.max_dim() + 1;
    for (int d = 1; d <= top; ++d) {
        for (int i = 0; i + 1 <= d; ++i) {
            int j = d - 1 - i;
            for (const auto& p : a.basis(i)) {
                for (const auto& q : b.basis(j)) {
                    Chain bd(d - 1);
                    Coef s = (j % 2 == 0) ? -1 : 1;  // (-1)^{|q|+1}
                    if (i == 0) {
                        bd.add(q, -s);
                    } else {
                        const auto& e = a.elem(p);
                        for (const auto& [x, k] : e.pos.terms) bd.add(join_id(x, q), s * k);
                        for (const auto& [x, k] : e.neg.terms) bd.add(join_id(x, q), -s * k);
                    }
                    if (j == 0) {
                        bd.add(p, -1);
                    } else {
                        const auto& e = b.elem(q);
                        for (const auto& [y, k] : e.pos.terms) bd.add(join_id(p, y), k);
                        for (const auto& [y, k] : e.neg.terms) bd.add(join_id(p, y), -k);
                    }
                    add_split(r, join_id(p, q), d, bd);
                }
            }
        }
    }
    return r;
}

DirComplex suspension_complex(const DirComplex& a) {
    DirComplex r;
    r.add(kSuspensionMinus, 0);
    r.add(kSuspensionPlus, 0);
    for (const auto& id : a.all_ids()) {
        const auto& e = a.elem(id);
        if (e.dim == 0) {
            r.add(suspension_id(id), 1, Chain::of(0, kSuspensionMinus), Chain::of(0, kSuspensionPlus));
        } else {
            r.add(suspension_id(id), e.dim + 1, rename_chain(e.neg, suspension_id), rename_chain(e.pos, suspension_id));
        }
    }
    return r;
}

}  // namespace graycat

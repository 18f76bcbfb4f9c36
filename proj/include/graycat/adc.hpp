#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace graycat {

using Id = std::string;
using Coef = std::int64_t;

struct Report {
    std::vector<std::string> issues;
    bool ok() const { return issues.empty(); }
    void fail(std::string msg) { issues.push_back(std::move(msg)); }
    void merge(const Report& other, const std::string& prefix = "");
};

// Integer combination of basis elements, all of one dimension. Zero terms are never stored.
struct Chain {
    int dim = 0;
    std::map<Id, Coef> terms;

    Chain() = default;
    explicit Chain(int d) : dim(d) {}
    static Chain of(int d, const Id& b, Coef c = 1);

    bool zero() const { return terms.empty(); }
    bool positive() const;
    Coef coef(const Id& b) const;
    Coef augmentation() const;
    std::set<Id> support() const;

    void add(const Id& b, Coef c);
    Chain& operator+=(const Chain& o);
    Chain& operator-=(const Chain& o);
    friend Chain operator+(Chain a, const Chain& b) { return a += b; }
    friend Chain operator-(Chain a, const Chain& b) { return a -= b; }
    Chain scaled(Coef c) const;

    Chain positive_part() const;
    Chain negative_part() const;  // returned with non-negative coefficients
    bool leq(const Chain& o) const;

    bool operator==(const Chain& o) const { return dim == o.dim && terms == o.terms; }
    bool operator!=(const Chain& o) const { return !(*this == o); }
    bool operator<(const Chain& o) const {
        return dim != o.dim ? dim < o.dim : terms < o.terms;
    }

    std::string str() const;
};

struct BasisElem {
    Id id;
    int dim = 0;
    Chain neg, pos;
};

// Graded basis with a split boundary; augmentation is the coefficient sum in degree 0.
class DirComplex {
public:
    void add(const Id& id, int dim, Chain neg = Chain(), Chain pos = Chain());
    bool has(const Id& id) const { return elems_.count(id) > 0; }
    int dim_of(const Id& id) const;
    const BasisElem& elem(const Id& id) const;
    int max_dim() const { return static_cast<int>(basis_.size()) - 1; }
    const std::vector<Id>& basis(int d) const;
    std::vector<Id> all_ids() const;
    std::vector<std::size_t> counts() const;
    std::size_t size() const { return elems_.size(); }
    bool empty() const { return elems_.empty(); }

    Chain boundary(const Chain& c) const;
    Chain boundary_neg(const Chain& c) const { return boundary(c).negative_part(); }
    Chain boundary_pos(const Chain& c) const { return boundary(c).positive_part(); }

private:
    std::vector<std::vector<Id>> basis_;
    std::map<Id, BasisElem> elems_;
};

bool same_complex(const DirComplex& a, const DirComplex& b);
DirComplex rename_complex(const DirComplex& c, const std::function<Id(const Id&)>& f);
Chain rename_chain(const Chain& c, const std::function<Id(const Id&)>& f);

// A cell in canonical form: tables neg[k], pos[k] for k = 0..n with neg[n] == pos[n].
struct CellTable {
    int n = 0;
    std::vector<Chain> neg, pos;

    const Chain& top() const { return neg[n]; }
    bool operator==(const CellTable& o) const { return n == o.n && neg == o.neg && pos == o.pos; }
    bool operator!=(const CellTable& o) const { return !(*this == o); }
    bool operator<(const CellTable& o) const {
        if (n != o.n) return n < o.n;
        if (neg != o.neg) return neg < o.neg;
        return pos < o.pos;
    }
    std::string str() const;
};

CellTable point_cell(const Id& v);
CellTable make_cell(const std::vector<Chain>& neg, const std::vector<Chain>& pos);
CellTable rename_cell(const CellTable& x, const std::function<Id(const Id&)>& f);

Report validate_complex(const DirComplex& c);
Report validate_cell(const DirComplex& c, const CellTable& x);
Report loopfree_report(const DirComplex& c);
bool is_loopfree_unital(const DirComplex& c);

CellTable atom(const DirComplex& c, const Id& b);
CellTable cell_source(const CellTable& x, int k);
CellTable cell_target(const CellTable& x, int k);
CellTable identity(const CellTable& x);
CellTable pad_to(const CellTable& x, int n);
bool composable(const CellTable& x, const CellTable& y, int k);
CellTable compose(const CellTable& x, const CellTable& y, int k);
bool cell_eq(const CellTable& x, const CellTable& y);
bool is_identity_cell(const CellTable& x);
// Support of level d: union of both sign tables.
std::set<Id> cell_support(const CellTable& x, int d);

Id tensor_id(const Id& p, const Id& q);
Id join_id(const Id& p, const Id& q);
Id suspension_id(const Id& p);
extern const Id kSuspensionMinus;
extern const Id kSuspensionPlus;

DirComplex tensor_complex(const DirComplex& a, const DirComplex& b);
DirComplex join_complex(const DirComplex& a, const DirComplex& b);
DirComplex suspension_complex(const DirComplex& a);

// Linear extension of a basis map (b -> chain of the same degree) to a chain.
Chain map_chain(const Chain& c, const std::function<Chain(const Id&)>& img, int target_dim);

}  // namespace graycat

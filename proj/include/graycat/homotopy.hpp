#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "graycat/gadgets.hpp"

namespace graycat {

// A strict N-category with finitely many cells, all cells above N being formal identities.
// Cells are indexed 0..size()-1; lower-dimensional operands of a composition are padded by identities.
struct FiniteCat {
    std::string name;
    int bound = 0;
    int m = kInf;
    std::vector<std::string> names;
    std::vector<int> dim, src, tgt;  // src/tgt are -1 for objects
    std::vector<int> ident;          // identity on the cell, -1 at the top dimension
    std::vector<int> unit_of;        // the cell this one is the identity of, or -1
    std::vector<bool> marked;        // explicit part; identities and cells above m count as marked too
    std::map<std::tuple<int, int, int>, int> comp;  // (k, x, y) -> x #_k y for equal dimensions

    int size() const { return static_cast<int>(dim.size()); }
    std::vector<int> of_dim(int d) const;
    int source(int x, int k) const;
    int target(int x, int k) const;
    int pad(int x, int d) const;
    int compose(int x, int y, int k) const;  // -1 when undefined
    bool is_identity(int x) const { return unit_of[x] >= 0; }
    bool is_marked(int x) const;
    int find(const std::string& cell_name) const;
    // Cells of dimension d from u to v (objects when d == 0).
    std::vector<int> cells_between(int u, int v, int d) const;
};

class FiniteCatBuilder {
public:
    FiniteCatBuilder(std::string name, int bound, int m = kInf);
    explicit FiniteCatBuilder(const FiniteCat& base, int new_bound);

    int object(const std::string& cell_name);
    int cell(const std::string& cell_name, int source, int target);
    int identity(int x);
    void set(int k, int x, int y, int z);
    void mark(int x);
    int find(const std::string& cell_name) const { return c_.find(cell_name); }

    // Adds missing identities and unit-law composites, closes nothing else, and validates.
    FiniteCat finish();
    FiniteCat finish_unchecked();

private:
    FiniteCat c_;
};

Report validate_finite_cat(const FiniteCat& c);
FiniteCat pad_bound(const FiniteCat& c, int new_bound);
FiniteCat with_marking(const FiniteCat& c, const std::set<int>& marked, int m);
void close_marking(FiniteCat& c);
std::set<int> marked_set(const FiniteCat& c);  // explicit cells of dimension >= 1 that count as marked

struct FiniteCatConversion {
    FiniteCat cat;
    std::vector<CellTable> cells;
    int index_of(const CellTable& x) const;
};
// Tabulates the free category up to its top dimension; throws BudgetExceeded when it is too large.
FiniteCatConversion to_finite_cat(const MarkedCat& c, std::size_t budget = 4000, int bound = -1);
std::vector<int> finite_functor(const PolyMorphism& f, const FiniteCatConversion& a, const FiniteCatConversion& b);

// ---------------------------------------------------------------- functors

Report check_functor(const FiniteCat& a, const FiniteCat& b, const std::vector<int>& f, bool require_marking = true);
std::vector<std::vector<int>> enumerate_functors(const FiniteCat& a, const FiniteCat& b, bool marking_preserving = true,
                                                 std::size_t limit = 1000000);
std::vector<int> identity_functor(const FiniteCat& c);
// Pads source and target to a common bound and extends the functor by identities.
std::tuple<FiniteCat, FiniteCat, std::vector<int>> pad_functor(const FiniteCat& a, const FiniteCat& b,
                                                              const std::vector<int>& f, int new_bound);

// ---------------------------------------------------------------- invertibility

struct Inverse {
    int inverse = -1;
    int unit = -1, counit = -1;  // -1 when the witness is a formal identity above the bound
};
std::optional<Inverse> find_inverse(const FiniteCat& c, int a, bool require_marked_inverse = false);
bool has_marked_cell(const FiniteCat& c, int u, int v, int d);

Report is_prefibrant(const FiniteCat& c);
std::set<int> coinductive_invertibles(const FiniteCat& c);
Report check_coinductive_properties(const FiniteCat& c, const std::set<int>& cells);
Report satisfies_2oo6(const FiniteCat& c);
Report marked_iff_invertible(const FiniteCat& c);

Report is_equivalence(const FiniteCat& x, const FiniteCat& y, const std::vector<int>& f);
Report is_isofibration(const FiniteCat& x, const FiniteCat& y, const std::vector<int>& f);

// ---------------------------------------------------------------- truncations

// pi_m: marks every cell of dimension m+1 and lowers the threshold to m.
FiniteCat pi_m(const FiniteCat& c, int m);
// iota: the same marked category read with threshold p >= current m.
FiniteCat iota(const FiniteCat& c, int p);
// tau_m: keeps cells of dimension <= m and marked cells above m. back maps new indices to old.
FiniteCat tau_m(const FiniteCat& c, int m, std::vector<int>* back = nullptr);

MarkedCat pi_m(const MarkedCat& c, int m);
MarkedCat iota(const MarkedCat& c, int p);
MarkedCat tau_m(const MarkedCat& c, int m);  // throws when the result is not a sub-polygraph

}  // namespace graycat

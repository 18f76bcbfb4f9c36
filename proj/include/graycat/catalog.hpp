#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "graycat/polygraph.hpp"

namespace graycat {

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Derivation {
    enum Kind { Atom, Identity, Compose } kind = Atom;
    Id gen;          // Atom
    int a = -1;      // Identity: argument; Compose: left factor
    int b = -1;      // Compose: right factor
    int level = -1;  // Compose: k in a #_k b
};

// All cells of a finite free category up to a dimension, closed under identities and
// composition, each with one derivation. Throws BudgetExceeded if the closure is too large.
class CellCatalog {
public:
    CellCatalog(const Polygraph& p, std::size_t budget, int max_dim = -1);

    int max_dim() const { return max_dim_; }
    const std::vector<CellTable>& cells() const { return cells_; }
    std::size_t size() const { return cells_.size(); }
    int index_of(const CellTable& x) const;
    const Derivation& derivation(int i) const { return deriv_[i]; }
    std::string expression(int i) const;
    std::vector<int> of_dim(int d) const;

private:
    int max_dim_ = 0;
    std::vector<CellTable> cells_;
    std::vector<Derivation> deriv_;
    std::unordered_map<std::string, int> index_;
};

}  // namespace graycat

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "graycat/homotopy.hpp"

namespace graycat::corpus {

struct Arrow {
    std::string name, src, tgt;
};
// (f, g, f#g); identities are written 1(x).
using Table = std::vector<std::tuple<std::string, std::string, std::string>>;

// A finite 1-category; marked lists arrow names.
FiniteCat one_category(const std::string& name, const std::vector<std::string>& objects, const std::vector<Arrow>& arrows,
                       const Table& table, const std::vector<std::string>& marked = {}, int m = kInf);

// A 2-category whose hom-categories are the preorders generated by leq (pairs of 1-cell names).
// Marked 2-cells are named "u=>v"; identity 2-cells follow the 1(x) convention.
FiniteCat posetal_two_category(const std::string& name, const std::vector<std::string>& objects,
                               const std::vector<Arrow>& arrows, const Table& table,
                               const std::vector<std::pair<std::string, std::string>>& leq,
                               const std::vector<std::string>& marked = {}, int m = kInf);

FiniteCat walking_arrow(bool marked = false, int m = kInf);
FiniteCat walking_iso(bool mark_f, bool mark_g, int m = kInf);
FiniteCat cyclic_group(int n, bool marked, int m = kInf);
FiniteCat idempotent(bool marked, int m = kInf);
FiniteCat chain3(int m = kInf);
FiniteCat codiscrete(int n, bool marked, int m = kInf);
FiniteCat point_cat(int bound = 1, int m = kInf);
FiniteCat inverse_quotient(bool mark_two_cells, int m = kInf);  // finite quotient of the E_1 stage
FiniteCat two_iso(bool marked, int m = kInf);                     // f, f' : a -> b with inverse 2-cells
FiniteCat scalar_group(bool marked, int m = kInf);                // Z/2 as 2-cells on an identity

struct Entry {
    std::string label;
    FiniteCat cat;
};
// At least twenty finite marked categories with valid tables.
std::vector<Entry> finite_corpus();

}  // namespace graycat::corpus

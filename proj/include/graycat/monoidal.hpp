#pragma once

#include <string>
#include <vector>

#include "graycat/marking.hpp"

namespace graycat {

Polygraph tensor_polygraph(const Polygraph& a, const Polygraph& b);
// Requires disjoint generator ids.
Polygraph join_polygraph(const Polygraph& a, const Polygraph& b);

MarkedCat lax_tensor(const MarkedCat& a, const MarkedCat& b);
MarkedCat pseudo_tensor(const MarkedCat& a, const MarkedCat& b);
MarkedCat marked_join(const MarkedCat& a, const MarkedCat& b);

enum class TensorMode { Lax, Pseudo };
MarkedCat marked_tensor(const MarkedCat& a, const MarkedCat& b, TensorMode mode);

struct CaseResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Renames generators of (A*B)*C to those of A*(B*C).
std::function<Id(const Id&)> reassociate(const Polygraph& a, const Polygraph& b, const Polygraph& c);

CaseResult check_associativity(const MarkedCat& a, const MarkedCat& b, const MarkedCat& c, TensorMode mode,
                               std::size_t budget = 300);
CaseResult check_units(const MarkedCat& x, TensorMode mode, std::size_t budget = 300);
std::vector<MarkedCat> globe_marking_corpus(int max_dim = 2, int m = kInf);
std::vector<CaseResult> assoc_unit_selftest(std::size_t budget = 300);

}  // namespace graycat

#pragma once

#include <climits>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "graycat/polygraph.hpp"

namespace graycat {

constexpr int kInf = INT_MAX;
std::string m_str(int m);
int parse_m(const std::string& s);

// Threshold m plus seeds; the represented marking is the closure of the seeds.
struct Marking {
    int m = kInf;
    std::set<Id> generator_seeds;
    std::vector<CellTable> cell_seeds;
};

struct MarkedCat {
    Polygraph base;
    Marking marking;
};

enum class Verdict { Marked, Unmarked, Unknown };
std::string verdict_name(Verdict v);

struct Membership {
    Verdict verdict = Verdict::Unknown;
    std::string witness;  // decomposition, or the reason for Unmarked/Unknown
};

MarkedCat flat(const Polygraph& p, int m = kInf);
MarkedCat sharp(const Polygraph& p, int m = kInf);
std::set<Id> marked_generators(const MarkedCat& c);
Report validate_marking(const MarkedCat& c);

Membership closure_contains(const MarkedCat& c, const CellTable& x, std::size_t budget = 20000);
inline bool is_marked(const MarkedCat& c, const CellTable& x, std::size_t budget = 20000) {
    return closure_contains(c, x, budget).verdict == Verdict::Marked;
}

// Records x as a seed in the cheapest form: nothing for identities or cells above m,
// a generator seed for atoms, a cell seed otherwise.
void add_seed(Marking& mk, const Polygraph& base, const CellTable& x);

// Colimits: base is the polygraph colimit, seeds are pushed forward and united.
MarkedCat marked_coproduct(const std::vector<MarkedCat>& parts);

struct MarkedExtension {
    MarkedCat result;
    std::map<Id, CellTable> ext_to_result;
};
MarkedExtension marked_pushout_extend(const MarkedCat& base, const MarkedCat& ext, const std::set<Id>& sub,
                                      const std::map<Id, CellTable>& glue, const std::function<Id(const Id&)>& rename);
std::pair<MarkedCat, PolyMorphism> marked_collapse(const MarkedCat& c, const Id& g);
MarkedCat mark_cells(const MarkedCat& c, const std::vector<CellTable>& cells);

struct ColimitDiagram {
    enum Kind { Coproduct, Extend, Collapse, Mark } kind = Coproduct;
    std::vector<MarkedCat> parts;  // Coproduct: all summands; Extend: {base, ext}; Collapse, Mark: {c}
    std::set<Id> sub;
    std::map<Id, CellTable> glue;
    std::function<Id(const Id&)> rename;
    Id collapsed;
    std::vector<CellTable> cells;
};
MarkedCat marked_colimit(const ColimitDiagram& d);

enum class MarkingOrder { Equal, Differ, Unknown };
struct MarkingComparison {
    MarkingOrder result = MarkingOrder::Unknown;
    CellTable witness;
    std::string detail;
};
MarkingComparison marking_eq(const Marking& a, const Marking& b, const Polygraph& base, std::size_t budget = 4000,
                             std::uint64_t seed = 1);

// Decides whether t is a sum of the given vectors with natural coefficients.
bool in_natural_span(const Chain& t, const std::vector<Chain>& vectors);

}  // namespace graycat

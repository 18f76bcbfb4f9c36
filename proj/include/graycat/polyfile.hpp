#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "graycat/nerve.hpp"

namespace graycat {

struct ParseError : std::runtime_error {
    int line = 0;
    ParseError(const std::string& msg, int line_no)
        : std::runtime_error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg), line(line_no) {}
};

// A functor between two finite-cat sections of the same file, by section index.
struct FunctorSection {
    int source = 0, target = 0;
    std::vector<int> images;
};

// Line-oriented text file:
//   graycat 1
//   name <text>
//   m <int|inf>
//   gen <id> <dim> [<src table> <tgt table>]
//   seed <id>
//   cellseed <table>
//   fcat <name> ... end
//   functor <source> <target> / images ... / end
// Blank lines and lines starting with '#' are ignored.
struct PolyFile {
    int version = 1;
    bool has_polygraph = false;
    MarkedCat cat;
    std::vector<FiniteCat> fcats;
    std::vector<FunctorSection> functors;
};

PolyFile parse_polyfile(const std::string& text);
std::string emit_polyfile(const PolyFile& f);
PolyFile read_polyfile(const std::string& path);
PolyFile polyfile_of(const MarkedCat& c);
PolyFile polyfile_of(const FiniteCat& c);

// Tables use the printed form of CellTable, e.g. [{a0-}/{a0+};{a}].
CellTable parse_cell_table(const std::string& s);
// Expressions: generator ids, 1(e), and (e #k e #k ...), composed left to right.
CellTable parse_expression(const Polygraph& p, const std::string& s);
// A table when the text starts with '[', an expression otherwise.
CellTable parse_cell(const Polygraph& p, const std::string& s);

std::string emit_fcat(const FiniteCat& c);

// Facet-list form: "simplex <dim> <index> <thin> <label> <face>..." with faces written nd or nd:surj.
std::string emit_strat(const StratSSet& s);
StratSSet parse_strat(const std::string& text);
std::string simplex_count_table(const StratSSet& s);

}  // namespace graycat

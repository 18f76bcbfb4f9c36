#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "graycat/adc.hpp"

namespace graycat {

struct Generator {
    Id id;
    int dim = 0;
    CellTable src, tgt;  // cells of dimension dim-1; unused for 0-generators
};

// A presentation by generators. Each generator keeps its full boundary tables, so presentations
// whose generators have identity or looping boundaries can still be built and glued. Cell
// arithmetic (compose, closure, catalogs) is only canonical when loop_free() holds.
class Polygraph {
public:
    std::string name;

    Polygraph() = default;
    static Polygraph from_complex(std::string name, const DirComplex& c);
    static Polygraph from_generators(std::string name, const std::vector<Generator>& gens);

    const DirComplex& complex() const { return complex_; }
    bool loop_free() const { return loop_free_; }
    const std::vector<Generator>& generators() const { return gens_; }
    const Generator& gen(const Id& id) const;
    bool has(const Id& id) const { return index_.count(id) > 0; }
    int dim_of(const Id& id) const { return gen(id).dim; }
    int max_dim() const { return complex_.max_dim(); }
    std::vector<std::size_t> counts() const { return complex_.counts(); }
    std::vector<Id> ids_of_dim(int d) const { return complex_.basis(d); }

    CellTable atom(const Id& id) const;
    Report check_cell(const CellTable& x) const { return validate_cell(complex_, x); }

private:
    std::vector<Generator> gens_;
    std::map<Id, std::size_t> index_;
    DirComplex complex_;
    bool loop_free_ = false;
};

// Sends each source generator to a cell of the target of at most the same dimension.
struct PolyMorphism {
    Polygraph source, target;
    std::map<Id, CellTable> assignment;  // padded to the generator's dimension
};

PolyMorphism make_morphism(const Polygraph& source, const Polygraph& target, const std::map<Id, CellTable>& images);
PolyMorphism identity_morphism(const Polygraph& p);
PolyMorphism inclusion_morphism(const Polygraph& sub, const Polygraph& super);
PolyMorphism compose_morphisms(const PolyMorphism& f, const PolyMorphism& g);  // g after f

// Chain-level action of a generator assignment on a cell.
CellTable apply_assignment(const std::map<Id, CellTable>& images, const CellTable& x);
CellTable apply(const PolyMorphism& f, const CellTable& x);
Report check_morphism(const PolyMorphism& f);
bool is_polygraphic(const PolyMorphism& f);
bool same_morphism(const PolyMorphism& f, const PolyMorphism& g);

Polygraph globe(int n);
Polygraph sphere(int n);
PolyMorphism sphere_inclusion(int n);
Polygraph point();
Polygraph empty_polygraph();
Polygraph interval_polygraph();  // D_1 with generators a0-, a0+, a
Polygraph suspend(const Polygraph& p, int n = 1);
CellTable suspend_cell(const CellTable& x);

std::set<Id> generator_support(const CellTable& x, int d);

struct Attachment {
    Id id;
    PolyMorphism boundary;  // from sphere(n)
};
Polygraph pushout_attach(const Polygraph& base, const std::vector<Attachment>& cells);
Polygraph pushout_attach(const Polygraph& base, const std::vector<PolyMorphism>& boundary_maps);

// Pushout of base <- sub -> ext where sub is a sub-polygraph of ext (listed by ids) and
// glue maps sub into base. Generators of ext outside sub are renamed by rename.
struct Extension {
    Polygraph result;
    std::map<Id, CellTable> ext_to_result;  // image of every ext generator
};
Extension pushout_extend(const Polygraph& base, const Polygraph& ext, const std::set<Id>& sub,
                         const std::map<Id, CellTable>& glue, const std::function<Id(const Id&)>& rename);

std::pair<Polygraph, PolyMorphism> collapse_generator(const Polygraph& p, const Id& g);
Polygraph coproduct(const std::vector<Polygraph>& ps);
Id coproduct_id(std::size_t index, const Id& id);

// Restriction to a set of generators closed under boundaries.
Polygraph sub_polygraph(const Polygraph& p, const std::set<Id>& ids, std::string name = "");
bool is_closed_subset(const Polygraph& p, const std::set<Id>& ids);
Polygraph remove_generators(const Polygraph& p, const std::set<Id>& ids);

// Bijection of generators preserving dimensions and boundary tables. Optional predicate
// restricts which pairs may correspond.
std::optional<std::map<Id, Id>> find_isomorphism(const Polygraph& a, const Polygraph& b,
                                                 const std::function<bool(const Id&, const Id&)>& allowed = nullptr);

}  // namespace graycat

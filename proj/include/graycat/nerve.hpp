#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "graycat/homotopy.hpp"

namespace graycat {

// Generator ids of orientals are the vertex lists written as digits ("0", "01", "012").
std::string simplex_id(const std::vector<int>& vertices);
Polygraph oriental(int n);
// Degeneracy collapsing vertices i and i+1, and the coface skipping vertex i.
PolyMorphism oriental_degeneracy(int k, int i);
PolyMorphism oriental_coface(int k, int i);

// Nondegenerate simplices with their faces; each face is a nondegenerate simplex precomposed with
// a degeneracy, given as a monotone surjection of vertex positions.
struct StratSSet {
    struct Face {
        int nd = -1;
        std::vector<int> surj;
    };
    struct Simplex {
        std::vector<Face> faces;
        std::vector<int> vertices;  // regular shapes only
        std::string label;
        bool thin = false;
    };
    std::string name;
    int ambient = -1;  // n when this is a regular subcomplex of the standard n-simplex
    std::vector<std::vector<Simplex>> simplices;

    std::vector<std::size_t> counts() const;
    std::size_t thin_count() const;
};

Report validate_strat(const StratSSet& s);

// Regular subcomplexes of the standard simplex, given by vertex sets closed under faces.
using VertexSet = std::vector<int>;
StratSSet regular_shape(const std::string& name, int n, const std::set<VertexSet>& simplices,
                        const std::function<bool(const VertexSet&)>& thin);
std::set<VertexSet> faces_closure(const std::set<VertexSet>& generators);
std::set<VertexSet> regular_simplices(const StratSSet& s);
std::set<VertexSet> regular_thin(const StratSSet& s);
bool same_regular(const StratSSet& a, const StratSSet& b);

StratSSet simplex_shape(int n);               // flat standard simplex; n = -1 gives the empty set
StratSSet simplex_top_thin(int n);            // top simplex thin
StratSSet complicial_simplex(int n, int k);   // thin: simplices containing {k-1,k,k+1} within [n]
StratSSet complicial_prime(int n, int k);     // plus the faces opposite k-1 and k+1
StratSSet complicial_double_prime(int n, int k);  // plus the face opposite k
StratSSet equivalence_simplex();              // dimension 3: thin above 2 plus [0,2] and [1,3]
StratSSet sharp_simplex(int n);
StratSSet horn(int n, int k);                 // all faces but the one opposite k, thinness inherited

StratSSet join_strat(const StratSSet& a, const StratSSet& b);

MarkedCat realize_regular(const StratSSet& s, int m = kInf);
MarkedMap realize_inclusion(const StratSSet& sub, const StratSSet& shape, int m = kInf);

struct Nerve {
    StratSSet nerve;
    std::vector<std::vector<Id>> generator_order;       // for each k, generators of oriental(k) in image order
    std::vector<std::vector<std::vector<int>>> all;     // all k-simplices as generator images
    std::vector<std::vector<bool>> all_thin;
};
Nerve street_nerve(const FiniteCat& c, int kmax, std::size_t budget = 20000);
Nerve street_nerve(const MarkedCat& c, int kmax, std::size_t budget = 20000);

}  // namespace graycat

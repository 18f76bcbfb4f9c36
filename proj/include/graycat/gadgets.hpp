#pragma once

#include <string>
#include <vector>

#include "graycat/monoidal.hpp"

namespace graycat {

struct MarkedMap {
    MarkedCat source, target;
    PolyMorphism underlying;
};

// Underlying morphism valid and every source seed lands on a marked cell.
Report check_marked_map(const MarkedMap& f, std::size_t budget = 20000);
// Source generators are target generators with the same ids.
MarkedMap marked_inclusion(const MarkedCat& sub, const MarkedCat& super);
bool is_sub_inclusion(const MarkedMap& f);
// Target generators hit by source generators, for an inclusion.
std::set<Id> image_generators(const MarkedMap& f);
// Isomorphism of inclusions: targets isomorphic preserving marked generators and the image.
std::optional<std::map<Id, Id>> inclusions_isomorphic(const MarkedMap& a, const MarkedMap& b);

MarkedMap boundary_cofibration(int n, int m = kInf);  // flat sphere into flat globe
MarkedMap marking_cofibration(int n, int m = kInf);   // globe to globe with its top generator marked
MarkedMap j_plus(int m = kInf);                       // the point a0+ of the marked interval

MarkedMap pushout_product(const MarkedMap& f, const MarkedMap& g, TensorMode mode);
MarkedMap anodyne_gen(int n, bool saturation, int m = kInf);

struct HemisphereResult {
    MarkedMap i, p;
    std::vector<CaseResult> checks;
    bool ok() const;
};
HemisphereResult hemisphere_retract(int n);

// x sits in the source of y (left) or in its target (right); the boundary of y containing x
// is l_n #_{n-1} ( ... (l_1 #_0 x #_0 r_1) ... ) #_{n-1} r_n.
struct WhiskerStep {
    CellTable left, right;
};
struct EquationShape {
    std::string name;
    MarkedCat carrier;
    Id x, y;
    enum Side { Left, Right } side = Left;
    bool saturation = false;
    std::vector<WhiskerStep> steps;  // steps[i-1] holds (l_i, r_i)
};

CellTable whisker(const EquationShape& e, const CellTable& core);
Report check_equation(const EquationShape& e, std::size_t budget = 20000);
std::set<Id> lambda_generators(const EquationShape& e);
// Lambda P -> P for equations, Omega P -> P for saturations.
MarkedMap equation_map(const EquationShape& e);

EquationShape left_division(int k, int n, bool saturation = false, int m = kInf);
EquationShape right_division(int k, int n, bool saturation = false, int m = kInf);
EquationShape cylinder_equation(int n, bool saturation = false, int m = kInf);

// Both return the inclusion of P glued to a renamed copy of itself along Lambda P.
MarkedMap uni(const EquationShape& p);
MarkedMap uni_coh(const EquationShape& p);
EquationShape uni_coh_equation(const EquationShape& p);
Id copy_id(const Id& id);

MarkedMap two_out_of_six_map(int n, int m = kInf);

// Finite stages of the inverse-adjoining tower.
Polygraph e_stage(int n);
Polygraph p_stage(int k);
Polygraph c_stage(int n);
Polygraph d_stage(int n);              // collapse of the spine of c_stage(n)
Polygraph d_stage_by_gluing(int n);    // the same object glued directly onto a point
PolyMorphism c_to_d_collapse(int n);   // quotient map c_stage(n) -> d_stage(n)
std::vector<CellTable> one_cells_of_interval();

}  // namespace graycat

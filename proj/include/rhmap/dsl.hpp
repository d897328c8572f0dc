#pragma once

#include <string>
#include <vector>

#include "rhmap/cdga.hpp"
#include "rhmap/mapspace.hpp"
#include "rhmap/sullivan.hpp"

namespace rhmap::dsl {

struct AlgebraParse {
    FiniteCdga algebra;
    std::vector<std::string> warnings;
};
struct SullivanParse {
    SullivanAlgebra algebra;
    std::vector<std::string> warnings;
};

// algebra NAME {
//   basis e2:2, e2p:2, e5:5;
//   product e2*e5 = 0;
//   product xb*yzb = xyzb;          # or  1/2*xyzb + c
//   default_product zero;
// }
// '#' starts a line comment; the unit "1" is implicit in degree 0; products
// not listed are zero; the mirror of each listed product is filled by graded
// commutativity.
AlgebraParse parse_algebra(const std::string& text);

// sullivan NAME {
//   generator x:3, y:5, z:7;
//   d x = 0;
//   d y = 0;
//   d z = x*y;                      # powers as x^2; rationals as p/q
// }
// Generators without a d clause are closed. d^2 = 0 is validated. A repeated
// odd generator in a differential normalizes to zero with a warning.
SullivanParse parse_sullivan(const std::string& text);

std::string render_algebra(const FiniteCdga& a);
std::string render_sullivan(const SullivanAlgebra& s);

// "0" or terms "q*h@l" joined by '+' (also accepts '-'), e.g. "1*e5@y".
GradedElement parse_mc_element(const std::string& text, const MappingSpaceModel& m);
std::string render_mc_element(const GradedElement& z, const MappingSpaceModel& m);

}  // namespace rhmap::dsl

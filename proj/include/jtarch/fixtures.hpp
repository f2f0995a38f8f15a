#ifndef JTARCH_FIXTURES_HPP
#define JTARCH_FIXTURES_HPP

#include "jtarch/compile.hpp"
#include "jtarch/network.hpp"

namespace jtarch {

// D -> S1, D -> S2, five states each.
BayesNet three_variable_net();
// Observations on S1 and S2.
Evidence three_variable_evidence();

// A 20-node binary join tree for the Chest Clinic network (variable ids as in
// chest_clinic()). Potentials are not assigned.
JoinTree chest_clinic_reference_bjt();

} // namespace jtarch

#endif

#pragma once

#include <string>
#include <vector>

#include "lightcone/section.hpp"

namespace lightcone {

/// Names of the built-in smooth test sections (Gaussian envelopes times
/// fixed polarization vectors, all with analytic jacobian and hessian).
std::vector<std::string> catalog_names();

/// Looks up a section by name. Besides catalog_names(), accepts
/// "circle:<R>", "eigenmode:<alpha>:<lambda>" and "frame:e1|e2|e3".
Section catalog_section(const std::string& name);

}  // namespace lightcone

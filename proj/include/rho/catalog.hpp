#pragma once

#include <string>
#include <vector>

#include "rho/parser.hpp"

namespace rho {

// Built-in model catalog. Parameterized entries take an integer after a
// colon: "bazaikin:l" (default l = 0), "sphere:n", "cpn:n".
ModelFile catalog(const std::string& name);

// The catalog source text for an entry (what `catalog show` prints).
std::string catalog_source(const std::string& name);

// Entry names as published by `catalog list`.
std::vector<std::string> catalog_names();

// Concrete instances the test suites sweep over.
std::vector<std::string> catalog_instances();

}  // namespace rho

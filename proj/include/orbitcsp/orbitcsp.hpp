#pragma once

#include "orbitcsp/combinatorics.hpp"
#include "orbitcsp/error.hpp"
#include "orbitcsp/identities.hpp"
#include "orbitcsp/implications.hpp"
#include "orbitcsp/minimality.hpp"
#include "orbitcsp/oracle.hpp"
#include "orbitcsp/relations.hpp"
#include "orbitcsp/solver.hpp"
#include "orbitcsp/structures.hpp"

namespace orbitcsp {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace orbitcsp

#pragma once

// Umbrella header.

#include "orbitpit/affine.hpp"
#include "orbitpit/branching.hpp"
#include "orbitpit/diagonal.hpp"
#include "orbitpit/errors.hpp"
#include "orbitpit/hasse.hpp"
#include "orbitpit/interpolate.hpp"
#include "orbitpit/invariants.hpp"
#include "orbitpit/json_io.hpp"
#include "orbitpit/matrix.hpp"
#include "orbitpit/monomial.hpp"
#include "orbitpit/ordering.hpp"
#include "orbitpit/pit.hpp"
#include "orbitpit/rational.hpp"
#include "orbitpit/rng.hpp"
#include "orbitpit/sparse_poly.hpp"
#include "orbitpit/trace_power.hpp"

#pragma once

// Umbrella header for the numscale library: space-time dependent number
// scaling, scaling-factor fields, scaled path lengths, variational
// geodesics, and the black/white scaling-hole and cosmological examples.

#include "numscale/core.hpp"
#include "numscale/cosmology.hpp"
#include "numscale/dynamics.hpp"
#include "numscale/fields.hpp"
#include "numscale/geodesics.hpp"
#include "numscale/geometry.hpp"
#include "numscale/holes.hpp"
#include "numscale/path.hpp"
#include "numscale/quadrature.hpp"
#include "numscale/scaled_numbers.hpp"
#include "numscale/table.hpp"

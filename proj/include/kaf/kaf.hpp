// SPDX-License-Identifier: Apache-2.0
#pragma once

// Umbrella header: graph surfaces in C^2 = R^4, the Kahler-angle functional
// L = integral sec(alpha), its Euler-Lagrange system in frame and graph form,
// ellipticity via the principal symbol, curvature identities, and the
// explicit gradient flow with its evolution-identity monitors.

#include "kaf/ambient.hpp"
#include "kaf/config.hpp"
#include "kaf/core.hpp"
#include "kaf/curvature.hpp"
#include "kaf/el_system.hpp"
#include "kaf/flow.hpp"
#include "kaf/grid.hpp"
#include "kaf/integrals.hpp"
#include "kaf/io.hpp"
#include "kaf/jets.hpp"
#include "kaf/presets.hpp"

#pragma once

// Umbrella header: scalar means, core functions and their catalog, the
// expression DSL, Csiszar f-divergences with perspective functions,
// MN-convexity falsification, the perspective-transfer inequality checkers
// and the symmetric-matrix Jensen machinery.

#include "fdiv/catalog.hpp"
#include "fdiv/convexity.hpp"
#include "fdiv/core_function.hpp"
#include "fdiv/divergence.hpp"
#include "fdiv/expr.hpp"
#include "fdiv/matrix.hpp"
#include "fdiv/means.hpp"
#include "fdiv/perspective_checks.hpp"
#include "fdiv/rng.hpp"
#include "fdiv/tolerance.hpp"

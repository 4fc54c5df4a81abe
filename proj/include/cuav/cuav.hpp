#pragma once

// Umbrella header.

#include "cuav/config.hpp"
#include "cuav/covertness.hpp"
#include "cuav/detection.hpp"
#include "cuav/gammainc.hpp"
#include "cuav/geometry.hpp"
#include "cuav/planner.hpp"
#include "cuav/rng.hpp"
#include "cuav/solvers.hpp"
#include "cuav/types.hpp"
#include "cuav/units.hpp"

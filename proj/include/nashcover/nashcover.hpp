#pragma once

// Umbrella header: fair-coverage solver suite.

#include "nashcover/common.hpp"
#include "nashcover/core.hpp"
#include "nashcover/exact.hpp"
#include "nashcover/families.hpp"
#include "nashcover/generators.hpp"
#include "nashcover/instance.hpp"
#include "nashcover/io.hpp"
#include "nashcover/reductions.hpp"
#include "nashcover/selfcheck.hpp"
#include "nashcover/solver.hpp"

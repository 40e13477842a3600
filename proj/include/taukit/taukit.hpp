#pragma once

#include "taukit/common.hpp"
#include "taukit/rng.hpp"
#include "taukit/parallel.hpp"
#include "taukit/special.hpp"
#include "taukit/grid.hpp"
#include "taukit/quadrature.hpp"
#include "taukit/costs.hpp"
#include "taukit/pwl.hpp"
#include "taukit/measures.hpp"
#include "taukit/infconv.hpp"
#include "taukit/test_functions.hpp"
#include "taukit/tau.hpp"
#include "taukit/concentration.hpp"
#include "taukit/report.hpp"
#include "taukit/suites.hpp"

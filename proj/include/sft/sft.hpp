#pragma once

#include "gauge.hpp"
#include "golden.hpp"
#include "oracle.hpp"
#include "problem.hpp"
#include "projection.hpp"
#include "scenario.hpp"
#include "selfcheck.hpp"
#include "sets.hpp"
#include "solver.hpp"
#include "vec2.hpp"

#pragma once

#include "specgrad/bench.hpp"
#include "specgrad/diagnostics.hpp"
#include "specgrad/linesearch.hpp"
#include "specgrad/problem.hpp"
#include "specgrad/problems.hpp"
#include "specgrad/solver.hpp"
#include "specgrad/stepsize.hpp"
#include "specgrad/vec.hpp"

#pragma once

// Convenience umbrella for the whole library. scale_io.hpp is excluded on
// purpose: it pulls in the vendored JSON parser, which pure numerical
// consumers do not need.

#include "tsfrac/calculus.hpp"
#include "tsfrac/errors.hpp"
#include "tsfrac/expr.hpp"
#include "tsfrac/fractional.hpp"
#include "tsfrac/grid.hpp"
#include "tsfrac/oracle.hpp"
#include "tsfrac/solver.hpp"
#include "tsfrac/specfun.hpp"
#include "tsfrac/timescale.hpp"

#pragma once

// Exact decision engine, solver and combinatorics toolkit for bivariate
// uniform Birkhoff interpolation schemes on rectangular node grids.

#include "birkhoff/errors.hpp"
#include "birkhoff/hermite2d.hpp"
#include "birkhoff/lattice.hpp"
#include "birkhoff/matching.hpp"
#include "birkhoff/matrix.hpp"
#include "birkhoff/polya.hpp"
#include "birkhoff/polynomial.hpp"
#include "birkhoff/prng.hpp"
#include "birkhoff/rational.hpp"
#include "birkhoff/reduction.hpp"
#include "birkhoff/scheme.hpp"
#include "birkhoff/scheme_io.hpp"
#include "birkhoff/univariate.hpp"

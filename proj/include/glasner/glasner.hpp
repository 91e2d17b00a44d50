#pragma once

// Umbrella header.

#include "glasner/arith.hpp"
#include "glasner/bad_set.hpp"
#include "glasner/bounds.hpp"
#include "glasner/errors.hpp"
#include "glasner/expsum.hpp"
#include "glasner/io.hpp"
#include "glasner/pair_stats.hpp"
#include "glasner/poly_matrix.hpp"
#include "glasner/rational.hpp"
#include "glasner/search.hpp"
#include "glasner/summation.hpp"
#include "glasner/torus.hpp"

#pragma once

#include "cayley/ball.hpp"
#include "cayley/dot.hpp"
#include "cayley/errors.hpp"
#include "cayley/invariance.hpp"
#include "cayley/invariant_sets.hpp"
#include "cayley/ising.hpp"
#include "cayley/measure.hpp"
#include "cayley/polynomial.hpp"
#include "cayley/serialize.hpp"
#include "cayley/solver.hpp"
#include "cayley/subgroup.hpp"
#include "cayley/sweep.hpp"
#include "cayley/system.hpp"
#include "cayley/word.hpp"

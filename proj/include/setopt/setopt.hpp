#pragma once

#include "setopt/io.hpp"
#include "setopt/polyhedron.hpp"
#include "setopt/rational_linalg.hpp"
#include "setopt/relaxation.hpp"
#include "setopt/set_order.hpp"
#include "setopt/simplex.hpp"
#include "setopt/solver.hpp"

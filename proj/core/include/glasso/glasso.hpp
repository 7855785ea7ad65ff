#pragma once

#include "glasso/errors.hpp"
#include "glasso/gista.hpp"
#include "glasso/io.hpp"
#include "glasso/linalg.hpp"
#include "glasso/objective.hpp"
#include "glasso/pista.hpp"
#include "glasso/problems.hpp"
#include "glasso/rng.hpp"
#include "glasso/solver.hpp"
#include "glasso/sym_matrix.hpp"

#pragma once

#include "sepeig/core.hpp"
#include "sepeig/io.hpp"
#include "sepeig/opgrid.hpp"
#include "sepeig/parallel.hpp"
#include "sepeig/random.hpp"
#include "sepeig/schmidt.hpp"
#include "sepeig/solver.hpp"
#include "sepeig/states.hpp"
#include "sepeig/witness.hpp"

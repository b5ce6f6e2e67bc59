#pragma once

#include "divsmooth/bounds.hpp"
#include "divsmooth/divergences.hpp"
#include "divsmooth/error.hpp"
#include "divsmooth/ext_real.hpp"
#include "divsmooth/families.hpp"
#include "divsmooth/majorization.hpp"
#include "divsmooth/oracles.hpp"
#include "divsmooth/prob.hpp"
#include "divsmooth/random.hpp"
#include "divsmooth/smoothing.hpp"
#include "divsmooth/sweep.hpp"

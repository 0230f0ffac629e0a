#pragma once

#include "cbounds/convex.hpp"
#include "cbounds/errors.hpp"
#include "cbounds/function.hpp"
#include "cbounds/interval.hpp"
#include "cbounds/means.hpp"
#include "cbounds/normed.hpp"
#include "cbounds/numeric.hpp"
#include "cbounds/partition.hpp"
#include "cbounds/power_inequalities.hpp"
#include "cbounds/trig.hpp"
#include "cbounds/verdict.hpp"

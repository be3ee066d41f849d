#pragma once

// Umbrella header for the whole library.

#include "qcover/cli.hpp"
#include "qcover/counting.hpp"
#include "qcover/errors.hpp"
#include "qcover/family.hpp"
#include "qcover/field.hpp"
#include "qcover/inequalities.hpp"
#include "qcover/io.hpp"
#include "qcover/matrix.hpp"
#include "qcover/maxsearch.hpp"
#include "qcover/sampling.hpp"
#include "qcover/selftest.hpp"
#include "qcover/singular.hpp"
#include "qcover/subspace.hpp"

#pragma once

// Umbrella header: transmission amplitudes and stationary-phase tunneling
// times for locally periodic rectangular barriers in space-fractional
// quantum mechanics.

#include "sfqm/asymptotics.hpp"
#include "sfqm/barrier.hpp"
#include "sfqm/chebyshev.hpp"
#include "sfqm/lattice.hpp"
#include "sfqm/oracle.hpp"
#include "sfqm/params.hpp"
#include "sfqm/sweep.hpp"
#include "sfqm/validate.hpp"
#include "sfqm/version.hpp"

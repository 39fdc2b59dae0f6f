#pragma once

#include "kmix/errors.hpp"
#include "kmix/experiments.hpp"
#include "kmix/ising.hpp"
#include "kmix/mixers.hpp"
#include "kmix/pauli.hpp"
#include "kmix/problems.hpp"
#include "kmix/rng.hpp"
#include "kmix/statevector.hpp"
#include "kmix/subspace.hpp"
#include "kmix/tae.hpp"
#include "kmix/trotter_analysis.hpp"
#include "kmix/tsp.hpp"

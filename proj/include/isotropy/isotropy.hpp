#pragma once

// Umbrella header.

#include "matrix.hpp"
#include "rng.hpp"
#include "toeplitz.hpp"
#include "canonical.hpp"
#include "consim.hpp"
#include "congruence.hpp"
#include "verify.hpp"
#include "generators.hpp"

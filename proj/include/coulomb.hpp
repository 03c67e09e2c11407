#pragma once

// Umbrella header: the whole library.

#include "coulomb/errors.hpp"
#include "coulomb/rational.hpp"
#include "coulomb/polynomial.hpp"
#include "coulomb/jet.hpp"
#include "coulomb/linalg.hpp"
#include "coulomb/gauge_theory.hpp"
#include "coulomb/groebner.hpp"
#include "coulomb/monopole.hpp"
#include "coulomb/coulomb_hom.hpp"
#include "coulomb/coulomb_k.hpp"
#include "coulomb/riemann_roch.hpp"
#include "coulomb/fixed_points.hpp"
#include "coulomb/hikita.hpp"
#include "coulomb/io.hpp"
#include "coulomb/sampling.hpp"
#include "coulomb/cli.hpp"

#pragma once
// Convenience header pulling in the whole library.

#include "husimi_cwt/fock.hpp"
#include "husimi_cwt/series_hermite.hpp"
#include "husimi_cwt/eta_rep.hpp"
#include "husimi_cwt/quadrature.hpp"
#include "husimi_cwt/cwt.hpp"
#include "husimi_cwt/husimi.hpp"
#include "husimi_cwt/config.hpp"
#include "husimi_cwt/grid.hpp"
#include "husimi_cwt/verify.hpp"

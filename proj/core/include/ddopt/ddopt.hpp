#pragma once

#include "ddopt/core/averaging.hpp"
#include "ddopt/core/prox.hpp"
#include "ddopt/core/rng.hpp"
#include "ddopt/core/types.hpp"
#include "ddopt/core/wasserstein.hpp"

#include "ddopt/problems/distribution.hpp"
#include "ddopt/problems/instances.hpp"
#include "ddopt/problems/loss.hpp"
#include "ddopt/problems/problem.hpp"
#include "ddopt/problems/sensitivity.hpp"

#include "ddopt/algorithms/conceptual.hpp"
#include "ddopt/algorithms/model_based.hpp"
#include "ddopt/algorithms/online.hpp"
#include "ddopt/algorithms/restart.hpp"
#include "ddopt/algorithms/stagewise.hpp"
#include "ddopt/algorithms/stochastic.hpp"
#include "ddopt/algorithms/trajectory.hpp"

#include "ddopt/equilibrium/equilibrium.hpp"

#include "ddopt/harness/acceptance.hpp"
#include "ddopt/harness/config.hpp"
#include "ddopt/harness/experiment.hpp"
#include "ddopt/harness/rate_fit.hpp"
#include "ddopt/harness/regime_sweep.hpp"
#include "ddopt/harness/registry.hpp"

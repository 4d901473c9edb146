#pragma once

// Umbrella header: univariate statistical depth transforms, the analytic
// laws of depth random variables, depth-induced total-variation divergences,
// and the Lipschitz-variational TVD estimators solved as exact chain LPs.

#include "depthdiv/chain_lp.hpp"
#include "depthdiv/cross_law.hpp"
#include "depthdiv/depth.hpp"
#include "depthdiv/distribution.hpp"
#include "depthdiv/divergence.hpp"
#include "depthdiv/experiment.hpp"
#include "depthdiv/io.hpp"
#include "depthdiv/quadrature.hpp"
#include "depthdiv/rng.hpp"

#pragma once

// Umbrella header: leave-node-out network jackknife and friends.

#include "netjack/error.hpp"
#include "netjack/random.hpp"
#include "netjack/graph.hpp"
#include "netjack/graphon.hpp"
#include "netjack/pattern.hpp"
#include "netjack/counting.hpp"
#include "netjack/spectral.hpp"
#include "netjack/statistic.hpp"
#include "netjack/resampling.hpp"
#include "netjack/inference.hpp"
#include "netjack/parallel.hpp"
#include "netjack/report.hpp"
#include "netjack/experiment.hpp"

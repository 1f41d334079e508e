#pragma once

#include "netsec/critical.hpp"
#include "netsec/errors.hpp"
#include "netsec/game.hpp"
#include "netsec/graph.hpp"
#include "netsec/lcp.hpp"
#include "netsec/roots.hpp"
#include "netsec/solve.hpp"
#include "netsec/statics.hpp"
#include "netsec/total_effort.hpp"
#include "netsec/weighting.hpp"
#include "netsec/wl_bs.hpp"

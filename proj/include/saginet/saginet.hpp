#pragma once

#include "saginet/baselines.hpp"
#include "saginet/channel.hpp"
#include "saginet/errors.hpp"
#include "saginet/evaluate.hpp"
#include "saginet/geo.hpp"
#include "saginet/kvfile.hpp"
#include "saginet/lp.hpp"
#include "saginet/matching.hpp"
#include "saginet/milp.hpp"
#include "saginet/mps.hpp"
#include "saginet/optimizer.hpp"
#include "saginet/rng.hpp"
#include "saginet/scenario.hpp"
#include "saginet/sweep.hpp"
#include "saginet/topology.hpp"

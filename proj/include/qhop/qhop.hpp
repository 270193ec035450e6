#pragma once

// Exact simulation and closed-form analysis of multi-hop qubit teleportation
// over partially entangled channels.

#include "qhop/analytics.hpp"
#include "qhop/channel.hpp"
#include "qhop/cli.hpp"
#include "qhop/io.hpp"
#include "qhop/measure.hpp"
#include "qhop/protocol.hpp"
#include "qhop/random.hpp"
#include "qhop/state.hpp"
#include "qhop/verification.hpp"

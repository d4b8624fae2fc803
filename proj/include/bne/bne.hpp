#pragma once
// Umbrella header: the whole library in dependency order.

#include "bne/common.hpp"
#include "bne/grid.hpp"
#include "bne/quantum.hpp"
#include "bne/equilibrium.hpp"
#include "bne/frame.hpp"
#include "bne/kernel.hpp"
#include "bne/collision.hpp"
#include "bne/diagnostics.hpp"
#include "bne/integrate.hpp"
#include "bne/config.hpp"
#include "bne/presets.hpp"
#include "bne/io.hpp"

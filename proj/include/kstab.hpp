#pragma once

/** @brief Umbrella header: exact K-stability invariants of log Fano threefold pairs. */

#include "kstab/arith.hpp"
#include "kstab/geom.hpp"
#include "kstab/zariski.hpp"
#include "kstab/surface.hpp"
#include "kstab/invariants.hpp"
#include "kstab/az.hpp"
#include "kstab/families.hpp"
#include "kstab/catalog.hpp"
#include "kstab/scan.hpp"
#include "kstab/json_io.hpp"
#include "kstab/verify.hpp"

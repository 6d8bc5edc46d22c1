#pragma once

#include "schro/errors.hpp"
#include "schro/gates.hpp"
#include "schro/circuit_io.hpp"
#include "schro/simulator.hpp"
#include "schro/fdm.hpp"
#include "schro/warp.hpp"
#include "schro/pipeline.hpp"
#include "schro/bounds.hpp"
#include "schro/heat.hpp"
#include "schro/advection.hpp"
#include "schro/verify.hpp"
#include "schro/config.hpp"
#include "schro/report.hpp"
#include "schro/catalog.hpp"

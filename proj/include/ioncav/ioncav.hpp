// ioncav.hpp — umbrella header for the ion-cavity optomechanics toolkit.

#pragma once

#include "ioncav/config.hpp"
#include "ioncav/entanglement.hpp"
#include "ioncav/error.hpp"
#include "ioncav/langevin.hpp"
#include "ioncav/numerics.hpp"
#include "ioncav/params.hpp"
#include "ioncav/spectrum.hpp"
#include "ioncav/steady_state.hpp"
#include "ioncav/svg.hpp"
#include "ioncav/sweep.hpp"
#include "ioncav/table_io.hpp"
#include "ioncav/tolerances.hpp"
#include "ioncav/version.hpp"

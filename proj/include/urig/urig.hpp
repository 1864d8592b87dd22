#pragma once

#include "urig/connectivity.hpp"
#include "urig/error.hpp"
#include "urig/experiments.hpp"
#include "urig/key_rings.hpp"
#include "urig/oracle.hpp"
#include "urig/rng.hpp"
#include "urig/table_io.hpp"
#include "urig/theory.hpp"

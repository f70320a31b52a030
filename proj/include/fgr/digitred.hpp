#pragma once

#include "fgr/digitred/an_listing.hpp"
#include "fgr/digitred/degree.hpp"
#include "fgr/digitred/digits.hpp"
#include "fgr/digitred/drivers.hpp"
#include "fgr/digitred/modp.hpp"
#include "fgr/digitred/sparse_build.hpp"

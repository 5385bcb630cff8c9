#pragma once

#include "tracegeo/matcore/expm.hpp"
#include "tracegeo/matcore/killing.hpp"
#include "tracegeo/matcore/logm.hpp"
#include "tracegeo/matcore/polar.hpp"
#include "tracegeo/matcore/so_log.hpp"
#include "tracegeo/matcore/spectral_profile.hpp"

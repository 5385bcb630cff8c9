#pragma once

#include "tracegeo/arcs.hpp"
#include "tracegeo/christoffel.hpp"
#include "tracegeo/core.hpp"
#include "tracegeo/curvature.hpp"
#include "tracegeo/foliation.hpp"
#include "tracegeo/geodesic.hpp"
#include "tracegeo/isometry.hpp"
#include "tracegeo/matcore.hpp"
#include "tracegeo/metric.hpp"

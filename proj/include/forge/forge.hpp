#pragma once

#include "forge/errors.hpp"
#include "forge/extension.hpp"
#include "forge/group2.hpp"
#include "forge/isometry.hpp"
#include "forge/metric_space.hpp"
#include "forge/oracle.hpp"
#include "forge/orbit_graph.hpp"
#include "forge/rational.hpp"
#include "forge/rng.hpp"
#include "forge/toeplitz.hpp"

#pragma once

#include "glq/common.hpp"
#include "glq/geometry.hpp"
#include "glq/oracle.hpp"
#include "glq/pbf.hpp"
#include "glq/potentials.hpp"
#include "glq/projection.hpp"
#include "glq/quadrature.hpp"
#include "glq/reduction.hpp"

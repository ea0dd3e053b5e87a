#pragma once

#include "gmaint/distribution.hpp"
#include "gmaint/equivalent.hpp"
#include "gmaint/errors.hpp"
#include "gmaint/gamma_dist.hpp"
#include "gmaint/io.hpp"
#include "gmaint/orders.hpp"
#include "gmaint/parallel.hpp"
#include "gmaint/policy.hpp"
#include "gmaint/process.hpp"
#include "gmaint/quadrature.hpp"
#include "gmaint/repair.hpp"
#include "gmaint/reward.hpp"
#include "gmaint/rng.hpp"
#include "gmaint/shape.hpp"
#include "gmaint/special_functions.hpp"
#include "gmaint/stats.hpp"

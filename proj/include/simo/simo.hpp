#pragma once

#include "simo/bounds.hpp"
#include "simo/channel.hpp"
#include "simo/em.hpp"
#include "simo/fem.hpp"
#include "simo/harness.hpp"
#include "simo/matrix.hpp"
#include "simo/numerics.hpp"
#include "simo/pa.hpp"
#include "simo/random.hpp"
#include "simo/scheme.hpp"
#include "simo/svg.hpp"
#include "simo/sweep_io.hpp"

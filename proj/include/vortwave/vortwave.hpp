#ifndef VORTWAVE_VORTWAVE_HPP
#define VORTWAVE_VORTWAVE_HPP

#include "vortwave/bernoulli.hpp"
#include "vortwave/bounds.hpp"
#include "vortwave/dispersion.hpp"
#include "vortwave/errors.hpp"
#include "vortwave/hodograph.hpp"
#include "vortwave/linearwave.hpp"
#include "vortwave/options.hpp"
#include "vortwave/scaling.hpp"
#include "vortwave/stream.hpp"
#include "vortwave/version.hpp"
#include "vortwave/vorticity.hpp"

#endif  // VORTWAVE_VORTWAVE_HPP

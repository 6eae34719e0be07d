#pragma once

#include "fracfisher/attraction.hpp"
#include "fracfisher/clt.hpp"
#include "fracfisher/diffusion.hpp"
#include "fracfisher/distributions.hpp"
#include "fracfisher/grid.hpp"
#include "fracfisher/information.hpp"
#include "fracfisher/profiles.hpp"
#include "fracfisher/reports.hpp"
#include "fracfisher/spectral_ops.hpp"

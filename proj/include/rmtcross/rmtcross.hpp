#pragma once

#include "rmtcross/analysis.hpp"
#include "rmtcross/analytic.hpp"
#include "rmtcross/crossover_param.hpp"
#include "rmtcross/ensembles.hpp"
#include "rmtcross/io.hpp"
#include "rmtcross/quadrature.hpp"
#include "rmtcross/rng.hpp"
#include "rmtcross/spectra.hpp"
#include "rmtcross/version.hpp"

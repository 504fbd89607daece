#pragma once

#include "annulus_green/errors.hpp"
#include "annulus_green/harmonics.hpp"
#include "annulus_green/series.hpp"
#include "annulus_green/point.hpp"
#include "annulus_green/coefficients.hpp"
#include "annulus_green/kernel_expansion.hpp"
#include "annulus_green/green_kernel.hpp"
#include "annulus_green/quadrature.hpp"
#include "annulus_green/mean_value.hpp"
#include "annulus_green/report.hpp"
#include "annulus_green/parallel.hpp"
#include "annulus_green/verification.hpp"

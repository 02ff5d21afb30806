#pragma once

// Umbrella header for the core library (the CLI layers, cli.hpp and
// report.hpp, pull in third-party headers and are included separately).

#include "cbratio/alphabet.hpp"
#include "cbratio/cost_benefit.hpp"
#include "cbratio/divergence.hpp"
#include "cbratio/errors.hpp"
#include "cbratio/pmf.hpp"
#include "cbratio/reconstruction.hpp"
#include "cbratio/scenarios.hpp"
#include "cbratio/transform.hpp"

#pragma once

// Umbrella header.

#include "case_data.hpp"
#include "distributions.hpp"
#include "errors.hpp"
#include "exact_tests.hpp"
#include "format.hpp"
#include "mixture_model.hpp"
#include "numerics.hpp"
#include "quadrature.hpp"
#include "reference_values.hpp"
#include "report.hpp"
#include "scenario_io.hpp"
#include "simulation.hpp"

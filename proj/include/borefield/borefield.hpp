#pragma once

#include "borefield/convolution.hpp"
#include "borefield/errors.hpp"
#include "borefield/field_response.hpp"
#include "borefield/geometry.hpp"
#include "borefield/kernels.hpp"
#include "borefield/length_optimizer.hpp"
#include "borefield/placement.hpp"
#include "borefield/properties.hpp"
#include "borefield/quadrature.hpp"
#include "borefield/scenario.hpp"
#include "borefield/scenario_io.hpp"
#include "borefield/simulation.hpp"
#include "borefield/special_functions.hpp"

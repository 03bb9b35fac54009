#pragma once

#include "sbrdm/analysis.hpp"
#include "sbrdm/errors.hpp"
#include "sbrdm/model.hpp"
#include "sbrdm/numerics/mat2.hpp"
#include "sbrdm/numerics/quadrature.hpp"
#include "sbrdm/numerics/special_functions.hpp"
#include "sbrdm/oracles/bath_discretization.hpp"
#include "sbrdm/oracles/exact_diag.hpp"
#include "sbrdm/oracles/influence.hpp"
#include "sbrdm/oracles/pimc.hpp"
#include "sbrdm/parallel.hpp"
#include "sbrdm/polaron.hpp"

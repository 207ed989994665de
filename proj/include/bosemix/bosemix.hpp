// bosemix.hpp — umbrella header

#pragma once

#include "bosemix/dephasing.hpp"
#include "bosemix/entanglement.hpp"
#include "bosemix/errors.hpp"
#include "bosemix/nonmarkov.hpp"
#include "bosemix/numerics/eig4.hpp"
#include "bosemix/numerics/loglog_fit.hpp"
#include "bosemix/numerics/quadrature.hpp"
#include "bosemix/params.hpp"
#include "bosemix/reservoir.hpp"
#include "bosemix/scenario.hpp"

#pragma once

#include "errors.hpp"
#include "numeric_policy.hpp"
#include "linalg.hpp"
#include "spin_model.hpp"
#include "dynamics.hpp"
#include "analytic.hpp"
#include "entanglement.hpp"
#include "sweep.hpp"
#include "verify.hpp"

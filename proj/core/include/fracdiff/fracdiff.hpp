#pragma once

#include "fracdiff/baselines.hpp"
#include "fracdiff/error.hpp"
#include "fracdiff/evaluator.hpp"
#include "fracdiff/kernel.hpp"
#include "fracdiff/quadrature.hpp"
#include "fracdiff/reference.hpp"
#include "fracdiff/stepper.hpp"
#include "fracdiff/sweep.hpp"

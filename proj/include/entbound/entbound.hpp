#pragma once

#include "entbound/errors.hpp"
#include "entbound/tensor_core.hpp"
#include "entbound/random.hpp"
#include "entbound/states.hpp"
#include "entbound/subspace.hpp"
#include "entbound/measures.hpp"
#include "entbound/bounds.hpp"
#include "entbound/robustness.hpp"

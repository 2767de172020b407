#pragma once

#include "liebasis/types.hpp"
#include "liebasis/lie_core.hpp"
#include "liebasis/casimir.hpp"
#include "liebasis/tensor_space.hpp"
#include "liebasis/operator_cache.hpp"
#include "liebasis/basis_sets.hpp"
#include "liebasis/completeness.hpp"
#include "liebasis/decomp.hpp"

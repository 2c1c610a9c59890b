#pragma once

#include "coverkit/rational.hpp"
#include "coverkit/integer_matrix.hpp"
#include "coverkit/group.hpp"
#include "coverkit/numerical_base.hpp"
#include "coverkit/building_data.hpp"
#include "coverkit/invariants.hpp"
#include "coverkit/deformations.hpp"
#include "coverkit/chain_family.hpp"
#include "coverkit/resolution.hpp"
#include "coverkit/polynomial.hpp"
#include "coverkit/emitter.hpp"

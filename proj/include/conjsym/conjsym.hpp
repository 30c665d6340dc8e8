#pragma once

#include "conjsym/errors.hpp"
#include "conjsym/matrix.hpp"
#include "conjsym/random.hpp"
#include "conjsym/spectral_decomposition.hpp"
#include "conjsym/antilinear.hpp"
#include "conjsym/subspace.hpp"
#include "conjsym/spectral.hpp"
#include "conjsym/conjfamily.hpp"
#include "conjsym/shiftmodels.hpp"
#include "conjsym/hyperinv.hpp"
#include "conjsym/json_io.hpp"

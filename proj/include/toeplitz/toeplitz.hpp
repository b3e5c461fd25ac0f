#pragma once

#include "toeplitz/error.hpp"
#include "toeplitz/rational.hpp"
#include "toeplitz/affine.hpp"
#include "toeplitz/monomial.hpp"
#include "toeplitz/algebra_element.hpp"
#include "toeplitz/measure.hpp"
#include "toeplitz/dirichlet.hpp"
#include "toeplitz/states.hpp"
#include "toeplitz/kms_verifier.hpp"
#include "toeplitz/repr.hpp"
#include "toeplitz/json.hpp"

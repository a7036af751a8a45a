#pragma once

#include "hopfsec/errors.hpp"
#include "hopfsec/random.hpp"
#include "hopfsec/polynomial.hpp"
#include "hopfsec/projective.hpp"
#include "hopfsec/curve.hpp"
#include "hopfsec/section.hpp"
#include "hopfsec/degeneration.hpp"
#include "hopfsec/convergence.hpp"
#include "hopfsec/seifert.hpp"
#include "hopfsec/io.hpp"

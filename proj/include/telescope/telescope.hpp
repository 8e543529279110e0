#pragma once

#include "telescope/celine/celine.hpp"
#include "telescope/core/algebraic.hpp"
#include "telescope/core/errors.hpp"
#include "telescope/core/factor.hpp"
#include "telescope/core/numbers.hpp"
#include "telescope/core/partial_fractions.hpp"
#include "telescope/core/poly.hpp"
#include "telescope/core/poly_algorithms.hpp"
#include "telescope/core/ratfun.hpp"
#include "telescope/ct/bivariate.hpp"
#include "telescope/dfinite/closure.hpp"
#include "telescope/dfinite/ore.hpp"
#include "telescope/expr/ast.hpp"
#include "telescope/expr/eval.hpp"
#include "telescope/hyper/gosper.hpp"
#include "telescope/hyper/term.hpp"
#include "telescope/hyper/zeilberger.hpp"
#include "telescope/integrate/hermite.hpp"
#include "telescope/integrate/logpart.hpp"
#include "telescope/linalg/nullspace.hpp"
#include "telescope/summation/abramov.hpp"
#include "telescope/summation/polynomial.hpp"
#include "telescope/verify/verify.hpp"

#pragma once

#include "logres/exact/linalg.hpp"
#include "logres/exact/matrix.hpp"
#include "logres/exact/poly.hpp"
#include "logres/exact/rational.hpp"
#include "logres/exact/squarefree.hpp"
#include "logres/exact/univariate.hpp"

#pragma once

#include "logres/normalform/connection.hpp"
#include "logres/normalform/solve.hpp"
#include "logres/normalform/xf.hpp"

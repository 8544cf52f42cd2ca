#pragma once

#include "permstat/bijections.hpp"
#include "permstat/codes.hpp"
#include "permstat/errors.hpp"
#include "permstat/permutation.hpp"
#include "permstat/qpoly.hpp"
#include "permstat/stats.hpp"
#include "permstat/verify.hpp"

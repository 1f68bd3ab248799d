#pragma once

#include "pseudoherm/antilinear.hpp"
#include "pseudoherm/eigensystem.hpp"
#include "pseudoherm/error.hpp"
#include "pseudoherm/factor.hpp"
#include "pseudoherm/hermitize.hpp"
#include "pseudoherm/io.hpp"
#include "pseudoherm/linalg.hpp"
#include "pseudoherm/metric.hpp"
#include "pseudoherm/planted.hpp"
#include "pseudoherm/ptmodel.hpp"
#include "pseudoherm/symmetry.hpp"

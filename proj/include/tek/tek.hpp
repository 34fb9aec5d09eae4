#pragma once

#include "tek/checks.hpp"
#include "tek/cli.hpp"
#include "tek/error.hpp"
#include "tek/exp_poly.hpp"
#include "tek/lambda_ops.hpp"
#include "tek/lcg.hpp"
#include "tek/linalg.hpp"
#include "tek/modules.hpp"
#include "tek/parallel.hpp"
#include "tek/rational.hpp"
#include "tek/serialize.hpp"
#include "tek/simple_lie.hpp"
#include "tek/toroidal.hpp"

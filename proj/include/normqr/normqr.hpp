#pragma once
//
// Project     : normqr
// Module      : normqr
// Description : umbrella header
//

#include "normqr/analysis.hpp"
#include "normqr/csv.hpp"
#include "normqr/errors.hpp"
#include "normqr/experiments.hpp"
#include "normqr/gen.hpp"
#include "normqr/least_deviation.hpp"
#include "normqr/lp.hpp"
#include "normqr/lu.hpp"
#include "normqr/matrix.hpp"
#include "normqr/norms.hpp"
#include "normqr/rrqr.hpp"

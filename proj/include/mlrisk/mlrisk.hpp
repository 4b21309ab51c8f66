#pragma once

#include "mlrisk/errors.hpp"
#include "mlrisk/domain.hpp"
#include "mlrisk/scoring.hpp"
#include "mlrisk/cost.hpp"
#include "mlrisk/optimizer.hpp"
#include "mlrisk/sensitivity.hpp"
#include "mlrisk/catalog.hpp"
#include "mlrisk/io.hpp"

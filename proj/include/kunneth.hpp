#pragma once

#include "kunneth/barcode_json.hpp"
#include "kunneth/combinators.hpp"
#include "kunneth/diagram_metrics.hpp"
#include "kunneth/errors.hpp"
#include "kunneth/filtered_complex.hpp"
#include "kunneth/interval.hpp"
#include "kunneth/metric_space.hpp"
#include "kunneth/persistence.hpp"
#include "kunneth/sliding_window.hpp"
#include "kunneth/svg.hpp"

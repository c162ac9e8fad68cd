#pragma once

#include "mobiuscf/decompose.hpp"
#include "mobiuscf/dsl.hpp"
#include "mobiuscf/errors.hpp"
#include "mobiuscf/expr.hpp"
#include "mobiuscf/families.hpp"
#include "mobiuscf/gosper.hpp"
#include "mobiuscf/integer.hpp"
#include "mobiuscf/leaping.hpp"
#include "mobiuscf/matrix.hpp"
#include "mobiuscf/qpcf.hpp"
#include "mobiuscf/rational.hpp"
#include "mobiuscf/report.hpp"
#include "mobiuscf/report_json.hpp"
#include "mobiuscf/stream.hpp"
#include "mobiuscf/tails.hpp"

#pragma once

#include "chargekit/rational.hpp"
#include "chargekit/errors.hpp"
#include "chargekit/algebra.hpp"
#include "chargekit/charge.hpp"
#include "chargekit/decomposition.hpp"
#include "chargekit/domination.hpp"
#include "chargekit/completion.hpp"
#include "chargekit/ratlp.hpp"
#include "chargekit/yan.hpp"
#include "chargekit/text_format.hpp"
#include "chargekit/report.hpp"

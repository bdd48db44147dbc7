#pragma once

#include "fuzzprob/bench.hpp"
#include "fuzzprob/controller.hpp"
#include "fuzzprob/csv.hpp"
#include "fuzzprob/error.hpp"
#include "fuzzprob/fuzzy.hpp"
#include "fuzzprob/prob.hpp"
#include "fuzzprob/random.hpp"
#include "fuzzprob/rulebase_io.hpp"
#include "fuzzprob/stochastic.hpp"
#include "fuzzprob/svg_plot.hpp"

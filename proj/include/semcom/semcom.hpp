#pragma once

#include "semcom/allocation/evaluate.hpp"
#include "semcom/allocation/rcga.hpp"
#include "semcom/allocation/scenario.hpp"
#include "semcom/errors.hpp"
#include "semcom/fading/fisher_f.hpp"
#include "semcom/fading/interference.hpp"
#include "semcom/fading/sinr.hpp"
#include "semcom/harness/config.hpp"
#include "semcom/harness/csv.hpp"
#include "semcom/harness/mc_validate.hpp"
#include "semcom/harness/runners.hpp"
#include "semcom/linkperf/bep.hpp"
#include "semcom/linkperf/delivery.hpp"
#include "semcom/linkperf/outage.hpp"
#include "semcom/linkperf/tdp.hpp"
#include "semcom/linkperf/user_link.hpp"
#include "semcom/numerics/pchip.hpp"
#include "semcom/numerics/quadrature.hpp"
#include "semcom/random/philox.hpp"
#include "semcom/semantics/dataset_io.hpp"
#include "semcom/semantics/heatmap.hpp"
#include "semcom/semantics/score.hpp"
#include "semcom/semantics/synth.hpp"
#include "semcom/semantics/triplet.hpp"
#include "semcom/specfun/gamma.hpp"
#include "semcom/specfun/hyp2f1.hpp"
#include "semcom/specfun/meijer.hpp"
#include "semcom/version.hpp"

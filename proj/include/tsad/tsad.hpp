#pragma once

// Convenience umbrella: the whole pipeline in one include.

#include "tsad/csv.hpp"
#include "tsad/detectors/isolation_forest.hpp"
#include "tsad/detectors/lof.hpp"
#include "tsad/detectors/score.hpp"
#include "tsad/error.hpp"
#include "tsad/eval/auc.hpp"
#include "tsad/eval/cd_diagram.hpp"
#include "tsad/eval/friedman.hpp"
#include "tsad/eval/ranks.hpp"
#include "tsad/eval/wilcoxon.hpp"
#include "tsad/features/catalog.hpp"
#include "tsad/features/extract.hpp"
#include "tsad/features/kernels.hpp"
#include "tsad/matrix.hpp"
#include "tsad/normalize.hpp"
#include "tsad/rng.hpp"
#include "tsad/runner/config.hpp"
#include "tsad/runner/experiment.hpp"
#include "tsad/runner/records.hpp"
#include "tsad/runner/report.hpp"
#include "tsad/runner/synth.hpp"
#include "tsad/series_io.hpp"
#include "tsad/time_series.hpp"
#include "tsad/windowing.hpp"

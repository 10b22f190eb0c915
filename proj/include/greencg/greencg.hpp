#pragma once

// Umbrella header for the green constraint generation library.

#include "greencg/adapter.hpp"
#include "greencg/bench.hpp"
#include "greencg/engine.hpp"
#include "greencg/errors.hpp"
#include "greencg/estimation.hpp"
#include "greencg/explain.hpp"
#include "greencg/ingest.hpp"
#include "greencg/kb.hpp"
#include "greencg/model.hpp"
#include "greencg/model_io.hpp"
#include "greencg/pipeline.hpp"
#include "greencg/ranker.hpp"
#include "greencg/scenarios.hpp"
#include "greencg/time.hpp"

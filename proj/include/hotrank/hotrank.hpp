#pragma once

#include "hotrank/engine.hpp"
#include "hotrank/graph.hpp"
#include "hotrank/hotset.hpp"
#include "hotrank/metrics.hpp"
#include "hotrank/pagerank.hpp"
#include "hotrank/rank.hpp"
#include "hotrank/report.hpp"
#include "hotrank/stream.hpp"
#include "hotrank/summary.hpp"
#include "hotrank/types.hpp"

#pragma once

#include "qitecut/errors.hpp"
#include "qitecut/graph.hpp"
#include "qitecut/graph6.hpp"
#include "qitecut/generate.hpp"
#include "qitecut/product_state.hpp"
#include "qitecut/qite.hpp"
#include "qitecut/oracles.hpp"
#include "qitecut/metrics.hpp"
#include "qitecut/experiment.hpp"

#pragma once

#include "spectralgof/directed.hpp"
#include "spectralgof/errors.hpp"
#include "spectralgof/graph.hpp"
#include "spectralgof/io/edge_list.hpp"
#include "spectralgof/io/json.hpp"
#include "spectralgof/io/svg.hpp"
#include "spectralgof/models.hpp"
#include "spectralgof/sgof.hpp"
#include "spectralgof/spectral.hpp"
#include "spectralgof/sweep.hpp"
#include "spectralgof/version.hpp"

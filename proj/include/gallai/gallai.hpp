#pragma once

// Umbrella header.

#include "gallai/coloring.hpp"
#include "gallai/constructions.hpp"
#include "gallai/detectors.hpp"
#include "gallai/io.hpp"
#include "gallai/matcher.hpp"
#include "gallai/pattern.hpp"
#include "gallai/search.hpp"
#include "gallai/structure.hpp"
#include "gallai/vertex_set.hpp"

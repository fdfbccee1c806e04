#pragma once

#include "gapforge/bipartite.hpp"
#include "gapforge/circuits.hpp"
#include "gapforge/color_coding.hpp"
#include "gapforge/combinatorics.hpp"
#include "gapforge/error.hpp"
#include "gapforge/exact.hpp"
#include "gapforge/gap_source.hpp"
#include "gapforge/graph.hpp"
#include "gapforge/product_bound.hpp"
#include "gapforge/reduce32.hpp"
#include "gapforge/reduce_main.hpp"
#include "gapforge/reduction_output.hpp"
#include "gapforge/rng.hpp"
#include "gapforge/solvers.hpp"

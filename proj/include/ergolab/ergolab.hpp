#pragma once

#include "ergolab/core/cesaro_geometric.hpp"
#include "ergolab/core/parallel.hpp"
#include "ergolab/core/rational.hpp"
#include "ergolab/core/sparse_vector.hpp"
#include "ergolab/graphop/c0_graph.hpp"
#include "ergolab/graphop/operators.hpp"
#include "ergolab/ladder/vertex.hpp"
#include "ergolab/ladder/graphs.hpp"
#include "ergolab/ladder/orbit_waves.hpp"
#include "ergolab/blockdiag/block.hpp"
#include "ergolab/ergodic/operator.hpp"
#include "ergolab/ergodic/cesaro.hpp"
#include "ergolab/ergodic/diagnostics.hpp"
#include "ergolab/ergodic/fixed_space.hpp"

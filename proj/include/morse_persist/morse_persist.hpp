#pragma once

// Morse decompositions of multivalued grid maps and their persistence over
// grid resolution: grids, rigorous outer approximations, Morse graphs,
// merge trees, graph homology barcodes, mixing analysis, and maps built
// from time series.

#include "morse_persist/barcode.hpp"
#include "morse_persist/digraph.hpp"
#include "morse_persist/dot.hpp"
#include "morse_persist/elementary.hpp"
#include "morse_persist/errors.hpp"
#include "morse_persist/grid.hpp"
#include "morse_persist/gridmap.hpp"
#include "morse_persist/induced_homology.hpp"
#include "morse_persist/interval.hpp"
#include "morse_persist/json_io.hpp"
#include "morse_persist/mapspec.hpp"
#include "morse_persist/merge_tree.hpp"
#include "morse_persist/morse.hpp"
#include "morse_persist/morse_graph.hpp"
#include "morse_persist/pipeline.hpp"
#include "morse_persist/ratmat.hpp"
#include "morse_persist/rational.hpp"
#include "morse_persist/recurrence.hpp"
#include "morse_persist/timeseries.hpp"

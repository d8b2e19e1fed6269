#pragma once

// Umbrella header.

#include "multicut/base.hpp"
#include "multicut/biclique.hpp"
#include "multicut/crossing.hpp"
#include "multicut/cuts.hpp"
#include "multicut/drawing.hpp"
#include "multicut/dual.hpp"
#include "multicut/embedding.hpp"
#include "multicut/gen.hpp"
#include "multicut/graph.hpp"
#include "multicut/instance.hpp"
#include "multicut/kplanar.hpp"
#include "multicut/oracle.hpp"
#include "multicut/planarize.hpp"
#include "multicut/states.hpp"
#include "multicut/treewidth.hpp"

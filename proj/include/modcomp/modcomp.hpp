#pragma once

#include "modcomp/assign.hpp"
#include "modcomp/canonical.hpp"
#include "modcomp/cone.hpp"
#include "modcomp/dual_graph.hpp"
#include "modcomp/errors.hpp"
#include "modcomp/piccone.hpp"
#include "modcomp/rational.hpp"
#include "modcomp/specialize.hpp"
#include "modcomp/subcurve.hpp"
#include "modcomp/universe.hpp"
#include "modcomp/version.hpp"
#include "modcomp/zmodel.hpp"

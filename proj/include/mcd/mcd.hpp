#pragma once

#include "mcd/calibrate.hpp"
#include "mcd/constants.hpp"
#include "mcd/curve.hpp"
#include "mcd/density.hpp"
#include "mcd/error.hpp"
#include "mcd/generate.hpp"
#include "mcd/geom.hpp"
#include "mcd/graph.hpp"
#include "mcd/io.hpp"
#include "mcd/random.hpp"
#include "mcd/rational.hpp"
#include "mcd/report.hpp"
#include "mcd/sampler.hpp"
#include "mcd/structure.hpp"
#include "mcd/svg.hpp"
#include "mcd/topo.hpp"
#include "mcd/trapezoidal.hpp"
#include "mcd/two_color.hpp"

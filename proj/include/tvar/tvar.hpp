#pragma once

#include "tvar/error.hpp"
#include "tvar/rational.hpp"
#include "tvar/linalg.hpp"
#include "tvar/cone.hpp"
#include "tvar/polyhedron.hpp"
#include "tvar/chamber_fan.hpp"
#include "tvar/curve.hpp"
#include "tvar/pdiv.hpp"
#include "tvar/classify.hpp"
#include "tvar/toric.hpp"
#include "tvar/section_ring.hpp"

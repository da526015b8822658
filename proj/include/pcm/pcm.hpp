#pragma once

#include "pcm/construct.hpp"
#include "pcm/errors.hpp"
#include "pcm/hpolyhedron.hpp"
#include "pcm/linalg.hpp"
#include "pcm/lp.hpp"
#include "pcm/operator.hpp"
#include "pcm/polar.hpp"
#include "pcm/polyhedra.hpp"
#include "pcm/rational.hpp"
#include "pcm/verify.hpp"

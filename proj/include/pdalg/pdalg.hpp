#pragma once

#include "pdalg/boundary.hpp"
#include "pdalg/catalog.hpp"
#include "pdalg/diagonal.hpp"
#include "pdalg/document.hpp"
#include "pdalg/errors.hpp"
#include "pdalg/graded_ring.hpp"
#include "pdalg/matrix.hpp"
#include "pdalg/rational.hpp"

#pragma once

#include "analysis.hpp"
#include "decide.hpp"
#include "extract.hpp"
#include "field.hpp"
#include "graph.hpp"
#include "io.hpp"
#include "lambda.hpp"
#include "orbit.hpp"
#include "rng.hpp"
#include "symplectic.hpp"

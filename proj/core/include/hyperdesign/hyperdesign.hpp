#pragma once

#include "hyperdesign/absorber.hpp"
#include "hyperdesign/combinatorics.hpp"
#include "hyperdesign/decomposition.hpp"
#include "hyperdesign/embed.hpp"
#include "hyperdesign/fractional.hpp"
#include "hyperdesign/gadgets.hpp"
#include "hyperdesign/hypergraph.hpp"
#include "hyperdesign/integral.hpp"
#include "hyperdesign/io.hpp"
#include "hyperdesign/nibble.hpp"
#include "hyperdesign/pipeline.hpp"
#include "hyperdesign/random.hpp"
#include "hyperdesign/simplex.hpp"
#include "hyperdesign/turan.hpp"
#include "hyperdesign/types.hpp"

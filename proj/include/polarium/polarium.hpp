#pragma once

#include "polarium/error.hpp"
#include "polarium/rational.hpp"
#include "polarium/linalg.hpp"
#include "polarium/cyclotomic.hpp"
#include "polarium/rootdata.hpp"
#include "polarium/tails.hpp"
#include "polarium/tori.hpp"
#include "polarium/polar.hpp"
#include "polarium/yuseq.hpp"
#include "polarium/looplie.hpp"
#include "polarium/chevmap.hpp"
#include "polarium/io.hpp"

#pragma once

#include "qgec/bitvec.hpp"
#include "qgec/css_code.hpp"
#include "qgec/dataset.hpp"
#include "qgec/decoders.hpp"
#include "qgec/gf2.hpp"
#include "qgec/golay.hpp"
#include "qgec/info.hpp"
#include "qgec/noise.hpp"
#include "qgec/registry.hpp"
#include "qgec/stats.hpp"
#include "qgec/sweep.hpp"
#include "qgec/toric.hpp"
#include "qgec/wire.hpp"

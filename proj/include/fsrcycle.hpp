#pragma once

#include "fsrcycle/affine_cycles.hpp"
#include "fsrcycle/bitlinalg.hpp"
#include "fsrcycle/cycletype.hpp"
#include "fsrcycle/error.hpp"
#include "fsrcycle/fsr.hpp"
#include "fsrcycle/gf2poly.hpp"
#include "fsrcycle/wide.hpp"
#include "fsrcycle/wreath.hpp"

#pragma once

#include "densem/compose.hpp"
#include "densem/density.hpp"
#include "densem/errors.hpp"
#include "densem/lexicon.hpp"
#include "densem/pregroup.hpp"
#include "densem/repro.hpp"
#include "densem/specmat.hpp"

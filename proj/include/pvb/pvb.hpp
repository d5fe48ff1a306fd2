#pragma once

#include "pvb/audit.hpp"
#include "pvb/bounds.hpp"
#include "pvb/extremal.hpp"
#include "pvb/numeric.hpp"
#include "pvb/params.hpp"
#include "pvb/series.hpp"
#include "pvb/verify.hpp"

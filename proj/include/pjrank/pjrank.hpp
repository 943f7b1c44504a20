#pragma once

#include "pjrank/enclosure.hpp"
#include "pjrank/json_io.hpp"
#include "pjrank/moments.hpp"
#include "pjrank/partition.hpp"
#include "pjrank/qseries.hpp"
#include "pjrank/rank_laws.hpp"
#include "pjrank/rational.hpp"
#include "pjrank/subgroups.hpp"
#include "pjrank/verify.hpp"

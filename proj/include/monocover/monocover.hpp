#pragma once

#include "monocover/adversary.hpp"
#include "monocover/almost_cover.hpp"
#include "monocover/bitset.hpp"
#include "monocover/components.hpp"
#include "monocover/errors.hpp"
#include "monocover/exact.hpp"
#include "monocover/experiments.hpp"
#include "monocover/graph.hpp"
#include "monocover/mindeg_partition.hpp"
#include "monocover/preference.hpp"
#include "monocover/properties.hpp"
#include "monocover/random.hpp"
#include "monocover/rational.hpp"
#include "monocover/text_format.hpp"

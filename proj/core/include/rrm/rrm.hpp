#pragma once

#include "rrm/correlation.hpp"
#include "rrm/diagnostics.hpp"
#include "rrm/entanglement.hpp"
#include "rrm/ggm.hpp"
#include "rrm/haar.hpp"
#include "rrm/imaginarity.hpp"
#include "rrm/linalg.hpp"
#include "rrm/moments.hpp"
#include "rrm/overlap.hpp"
#include "rrm/random.hpp"
#include "rrm/shadows.hpp"
#include "rrm/state.hpp"
#include "rrm/types.hpp"
#include "rrm/zoo.hpp"

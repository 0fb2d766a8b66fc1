#pragma once

#include "twinforge/budget.hpp"
#include "twinforge/entangle.hpp"
#include "twinforge/error.hpp"
#include "twinforge/free_order.hpp"
#include "twinforge/gem.hpp"
#include "twinforge/io.hpp"
#include "twinforge/logic.hpp"
#include "twinforge/org.hpp"
#include "twinforge/pipeline.hpp"
#include "twinforge/poset.hpp"
#include "twinforge/relational.hpp"
#include "twinforge/report.hpp"
#include "twinforge/twinship.hpp"
#include "twinforge/union_find.hpp"
#include "twinforge/word.hpp"

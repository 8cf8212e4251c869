#pragma once

#include "dpo/errors.hpp"
#include "dpo/graph.hpp"
#include "dpo/io.hpp"
#include "dpo/match.hpp"
#include "dpo/morphism.hpp"
#include "dpo/pushout.hpp"
#include "dpo/rewrite.hpp"
#include "dpo/rule.hpp"

#pragma once

#include "sll/bayes_net.hpp"
#include "sll/common.hpp"
#include "sll/dag.hpp"
#include "sll/dataset.hpp"
#include "sll/dseparation.hpp"
#include "sll/evaluation.hpp"
#include "sll/exact_search.hpp"
#include "sll/global_construction.hpp"
#include "sll/greedy_search.hpp"
#include "sll/io.hpp"
#include "sll/local_learning.hpp"
#include "sll/parallel.hpp"
#include "sll/random.hpp"
#include "sll/scoring.hpp"
#include "sll/types.hpp"

#pragma once

#include "ccc45/competition.hpp"
#include "ccc45/cost_model.hpp"
#include "ccc45/dataset.hpp"
#include "ccc45/errors.hpp"
#include "ccc45/evaluation.hpp"
#include "ccc45/experiment.hpp"
#include "ccc45/induction.hpp"
#include "ccc45/pruning.hpp"
#include "ccc45/tree.hpp"
